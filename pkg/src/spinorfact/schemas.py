"""Pydantic wire models shared by the CLI and the REST surface.

Complex numbers travel as ``[re, im]`` pairs.  Even elements use the 16
even slots in the order of ``cga_core.EVEN_SLOT_LABELS``.  Floats are
rounded to 12 significant digits on the way out so that identical runs
serialize to identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from spinorfact.annihilator import AnnihilatorSpace, canonical_vector
from spinorfact.cga_core import (
    N_BLADES,
    N_EVEN_SLOTS,
    CgaVector,
    Multivector,
    Quaternion,
    from_even_slots,
    to_even_slots,
)
from spinorfact.factorization import Factorization, FactorReport, LinearFactor, OrderingDiagnostic
from spinorfact.fourbar_demo import FourBarReport, QuadricSystem
from spinorfact.mult_technique import CofactorResult, RealCofactorResult
from spinorfact.spinor_poly import EvenPolynomial, QuadraticFactor, RealPolynomial

SIGNIFICANT_DIGITS: int = 12
MAX_SEED: int = 2**64 - 1

ComplexPair = Tuple[float, float]


def _round(value: float) -> float:
    # "+ 0.0" folds negative zero
    return float(f"{float(value):.{SIGNIFICANT_DIGITS}g}") + 0.0


def _pair(z: complex) -> ComplexPair:
    z = complex(z)
    return (_round(z.real), _round(z.imag))


def _pairs(values: np.ndarray) -> List[ComplexPair]:
    return [_pair(v) for v in np.asarray(values, dtype=complex).reshape(-1)]


def _complex(pairs: List[ComplexPair]) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


class WireModel(BaseModel):
    """Base for every wire model: no extra keys, no infinities or NaNs."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, populate_by_name=True)

    def to_json(self) -> str:
        """Sorted-key JSON, stable across runs."""
        return json.dumps(self.model_dump(mode="json", by_alias=True), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------


class EvenElementModel(WireModel):
    """An even element as 16 ``[re, im]`` slot pairs."""

    slots: List[ComplexPair] = Field(..., min_length=N_EVEN_SLOTS, max_length=N_EVEN_SLOTS)

    @classmethod
    def from_multivector(cls, q: Multivector) -> EvenElementModel:
        return cls(slots=_pairs(to_even_slots(q, tol=1e-8)))

    def to_multivector(self) -> Multivector:
        return from_even_slots(_complex(self.slots))


class MultivectorModel(WireModel):
    coeffs: List[ComplexPair] = Field(..., min_length=N_BLADES, max_length=N_BLADES)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> MultivectorModel:
        return cls(coeffs=_pairs(mv.coeffs))

    def to_multivector(self) -> Multivector:
        return Multivector(_complex(self.coeffs))


class CgaVectorModel(WireModel):
    """``(a_o, a1, a2, a3, a_inf)`` as ``[re, im]`` pairs."""

    coords: List[ComplexPair] = Field(..., min_length=5, max_length=5)

    @classmethod
    def from_vector(cls, v: CgaVector) -> CgaVectorModel:
        return cls(coords=_pairs(v.as_array()))

    def to_vector(self) -> CgaVector:
        return CgaVector.from_array(_complex(self.coords))


class QuaternionModel(WireModel):
    components: List[ComplexPair] = Field(..., min_length=4, max_length=4)

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> QuaternionModel:
        return cls(components=_pairs(q.as_array()))

    def to_quaternion(self) -> Quaternion:
        return Quaternion.from_array(_complex(self.components))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class PolynomialModel(WireModel):
    """``{"coeffs": [...]}`` in ascending degree."""

    coeffs: List[EvenElementModel] = Field(..., min_length=1)

    @classmethod
    def from_polynomial(cls, c: EvenPolynomial) -> PolynomialModel:
        coefficients: List[Multivector] = list(c.coeffs) or [Multivector.zero()]
        return cls(coeffs=[EvenElementModel.from_multivector(q) for q in coefficients])

    def to_polynomial(self) -> EvenPolynomial:
        return EvenPolynomial(q.to_multivector() for q in self.coeffs)


class RealPolynomialModel(WireModel):
    real_coeffs: List[float] = Field(..., min_length=1)

    @classmethod
    def from_polynomial(cls, p: RealPolynomial) -> RealPolynomialModel:
        return cls(real_coeffs=[_round(v) for v in p.coeffs] or [0.0])

    def to_polynomial(self) -> RealPolynomial:
        return RealPolynomial(tuple(self.real_coeffs))


class LinearFactorModel(WireModel):
    h: EvenElementModel
    M: RealPolynomialModel  # noqa: N815
    roots: List[ComplexPair] = Field(..., min_length=2, max_length=2)
    side: Literal["left", "right"] = "left"
    method: str = "geometric"

    @classmethod
    def from_factor(cls, f: LinearFactor) -> LinearFactorModel:
        return cls(
            h=EvenElementModel.from_multivector(f.h),
            M=RealPolynomialModel.from_polynomial(f.M),
            roots=[_pair(f.quadratic.z1), _pair(f.quadratic.z2)],
            side=f.side,  # type: ignore[arg-type]
            method=f.method,
        )

    def to_factor(self) -> LinearFactor:
        z1, z2 = (complex(re, im) for re, im in self.roots)
        return LinearFactor(
            self.h.to_multivector(), QuadraticFactor(z1, z2), self.side, self.method
        )


class FactorizationModel(WireModel):
    factors: List[LinearFactorModel]
    residual: float
    ordering_id: str
    lead: EvenElementModel
    side: Literal["left", "right"] = "left"

    @classmethod
    def from_factorization(cls, f: Factorization) -> FactorizationModel:
        return cls(
            factors=[LinearFactorModel.from_factor(x) for x in f.factors],
            residual=_round(f.residual),
            ordering_id=f.ordering_id,
            lead=EvenElementModel.from_multivector(f.lead),
            side=f.side,  # type: ignore[arg-type]
        )

    def to_factorization(self) -> Factorization:
        return Factorization(
            tuple(x.to_factor() for x in self.factors),
            self.residual,
            self.ordering_id,
            self.lead.to_multivector(),
            self.side,
        )


class OrderingDiagnosticModel(WireModel):
    ordering_id: str
    status: str
    detail: str = ""
    methods: List[str] = Field(default_factory=list)

    @classmethod
    def from_diagnostic(cls, d: OrderingDiagnostic) -> OrderingDiagnosticModel:
        return cls(
            ordering_id=d.ordering_id, status=d.status, detail=d.detail, methods=list(d.methods)
        )


class FactorReportModel(WireModel):
    status: Literal["factored", "no_factorization", "infinite_family"]
    factorizations: List[FactorizationModel]
    diagnostics: List[OrderingDiagnosticModel] = Field(default_factory=list)

    @classmethod
    def from_report(cls, r: FactorReport) -> FactorReportModel:
        return cls(
            status=r.status,  # type: ignore[arg-type]
            factorizations=[FactorizationModel.from_factorization(f) for f in r.factorizations],
            diagnostics=[OrderingDiagnosticModel.from_diagnostic(d) for d in r.diagnostics],
        )


class VerifyRequestModel(WireModel):
    polynomial: PolynomialModel
    factorization: FactorizationModel


class VerifyResultModel(WireModel):
    residual: float
    verified: bool


# ---------------------------------------------------------------------------
# Annihilators and cofactors
# ---------------------------------------------------------------------------


class AnnihilatorReportModel(WireModel):
    left: List[CgaVectorModel]
    right: List[CgaVectorModel]
    classification: Literal["generic", "special"] = Field(..., alias="class")

    @classmethod
    def from_spaces(cls, left: AnnihilatorSpace, right: AnnihilatorSpace) -> AnnihilatorReportModel:
        return cls(
            left=[CgaVectorModel.from_vector(canonical_vector(v)) for v in left.basis],
            right=[CgaVectorModel.from_vector(canonical_vector(v)) for v in right.basis],
            classification="generic" if left.generic else "special",
        )


class CofactorResultModel(WireModel):
    """Linear cofactor ``H`` of ``P`` and the real cofactor ``R`` built from the same seed.

    ``product_factorization`` factors ``P H``; ``real_factorization``
    factors ``P R``.
    """

    H: PolynomialModel  # noqa: N815
    e: CgaVectorModel
    f: CgaVectorModel
    attempts: int = Field(..., ge=1)
    product_factorization: Optional[FactorizationModel] = None
    left_factor: Optional[LinearFactorModel] = None
    right_factor: Optional[LinearFactorModel] = None
    R: RealPolynomialModel  # noqa: N815
    cofactors: List[PolynomialModel]
    real_factorization: FactorizationModel

    @classmethod
    def from_results(cls, found: CofactorResult, real: RealCofactorResult) -> CofactorResultModel:
        return cls(
            H=PolynomialModel.from_polynomial(found.H),
            e=CgaVectorModel.from_vector(found.e),
            f=CgaVectorModel.from_vector(found.f),
            attempts=found.attempts,
            product_factorization=(
                FactorizationModel.from_factorization(found.product_factorization)
                if found.product_factorization is not None
                else None
            ),
            left_factor=(
                LinearFactorModel.from_factor(found.left_factor)
                if found.left_factor is not None
                else None
            ),
            right_factor=(
                LinearFactorModel.from_factor(found.right_factor)
                if found.right_factor is not None
                else None
            ),
            R=RealPolynomialModel.from_polynomial(real.R),
            cofactors=[PolynomialModel.from_polynomial(h) for h in real.cofactors],
            real_factorization=FactorizationModel.from_factorization(real.factorization),
        )


# ---------------------------------------------------------------------------
# Four-bar
# ---------------------------------------------------------------------------


class QuadricSystemModel(WireModel):
    """Three symmetric 4x4 real matrices."""

    forms: List[List[List[float]]] = Field(..., min_length=3, max_length=3)

    @field_validator("forms")
    @classmethod
    def _square(cls, forms: List[List[List[float]]]) -> List[List[List[float]]]:
        for form in forms:
            if len(form) != 4 or any(len(row) != 4 for row in form):
                raise ValueError("every quadric form must be a 4x4 matrix")
        return forms

    def to_system(self) -> QuadricSystem:
        first, second, third = (np.array(f, dtype=float) for f in self.forms)
        return QuadricSystem((first, second, third))


class PointsModel(WireModel):
    points: List[QuaternionModel] = Field(..., min_length=2)

    def to_quaternions(self) -> List[Quaternion]:
        return [p.to_quaternion() for p in self.points]


class NullPointModel(WireModel):
    n: QuaternionModel
    left_ann: CgaVectorModel
    right_ann: CgaVectorModel
    ruling_partners: Dict[str, int] = Field(default_factory=dict)


class FourBarReportModel(WireModel):
    points: List[NullPointModel]
    first_kind: List[Tuple[int, int]]
    second_kind: List[Tuple[int, int]]
    fixed_axes: List[List[float]]
    moving_axes: List[List[float]]

    @classmethod
    def from_report(cls, r: FourBarReport) -> FourBarReportModel:
        return cls(
            points=[
                NullPointModel(
                    n=QuaternionModel.from_quaternion(p.n),
                    left_ann=CgaVectorModel.from_vector(p.left_ann),
                    right_ann=CgaVectorModel.from_vector(p.right_ann),
                    ruling_partners=dict(p.ruling_partners),
                )
                for p in r.points
            ],
            first_kind=list(r.rulings.first),
            second_kind=list(r.rulings.second),
            fixed_axes=[[_round(v) for v in axis] for axis in r.axes.fixed],
            moving_axes=[[_round(v) for v in axis] for axis in r.axes.moving],
        )


# ---------------------------------------------------------------------------
# Errors and run configuration
# ---------------------------------------------------------------------------


class ErrorModel(WireModel):
    error: str
    detail: str


class RunConfig(WireModel):
    """Validated command-line configuration."""

    subcommand: Literal["factor", "verify", "cofactor", "annihilate", "fourbar"]
    input: Optional[Path] = None
    tol: float = Field(default=1e-10, gt=0.0)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    format: Literal["json", "pretty"] = "json"
    side: Literal["left", "right"] = "left"
    all_orderings: bool = False
    max_attempts: int = Field(default=20, ge=1)
    method: Literal["nullspace", "sandwich", "cases"] = "nullspace"
    system: Optional[Path] = None
    points: Optional[Path] = None
    verbose: bool = False


def load_model(
    model: type[WireModel], path: Optional[Path], stdin_text: Optional[str] = None
) -> Any:
    """Parse ``model`` from a JSON file, or from ``stdin_text`` when no path is given.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        pydantic.ValidationError: If the JSON does not match the model.
    """
    if path is not None:
        text: str = Path(path).read_text(encoding="utf-8")
    elif stdin_text is not None:
        text = stdin_text
    else:
        raise ValueError("no input given")
    return model.model_validate_json(text)
