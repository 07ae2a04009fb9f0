"""Linear factors and full factorizations of spinor polynomials.

Three extractors compute a left factor ``t - h`` for a monic real quadratic
factor ``M = (t - z1)(t - z2)`` of the norm polynomial:

* ``left_factor_geometric``   -- from non-orthogonal annihilating points of
  ``C(z1)`` and ``C(z2)``.
* ``left_factor_algebraic``   -- from the linear remainder of ``C`` modulo ``M``.
* ``left_factor_double_root`` -- for ``z1 = z2`` real.

``factorize_all`` walks the orderings of quadratic factors, peels one linear
factor per step and verifies every result by re-expansion.  Right factors
are obtained through reversion.

Usage:
    poetry run python -m spinorfact.factorization --all
"""

from __future__ import annotations

import argparse
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
import scipy.optimize
from tqdm import tqdm

from spinorfact.annihilator import (
    AnnihilatorSpace,
    NullDisplacement,
    canonical_vector,
    left_annihilator_nullspace,
)
from spinorfact.cga_core import (
    E1,
    E2,
    EINF,
    EPS1,
    ONE,
    QI,
    QJ,
    CgaVector,
    FourQuat,
    Multivector,
    Quaternion,
    dot,
    from_even_slots,
    from_four_quat,
    quat_right_matrix,
    to_four_quat,
    vect,
)
from spinorfact.errors import (
    DegenerateData,
    EmptyKernel,
    InfiniteFamily,
    KernelDimensionError,
    NoCommonZero,
    NoFactor,
    NonRealFactor,
    NotInvertible,
    NotNullDisplacement,
    NullEvaluationDegenerate,
    OrthogonalAnnihilators,
    SpinorFactError,
)
from spinorfact.spinor_poly import (
    EvenPolynomial,
    QuadraticFactor,
    RealPolynomial,
    SpinorPolynomial,
    divide_left,
    divide_right,
    left_evaluate,
    norm_poly,
    ordering_id,
    quadratic_orderings,
    shift,
)

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

DEFAULT_TOL: float = 1e-10
DEFAULT_SEED: int = 0
DEFAULT_MAX_FAMILIES: int = 2
ACCEPT_TOL: float = 1e-9
DEDUPE_TOL: float = 1e-7
FACTOR_KERNEL_TOL: float = 1e-7
FACTOR_NULL_TOL: float = 1e-6
ORTHOGONAL_TOL: float = 1e-8
REAL_TOL: float = 1e-8
REMAINDER_TOL: float = 1e-7
DOUBLE_ROOT_CRITERION_TOL: float = 1e-8
FAMILY_STARTS: int = 12
SIDES: Tuple[str, ...] = ("left", "right")

logger: logging.Logger = logging.getLogger(__name__)

PolyLike = Union[SpinorPolynomial, EvenPolynomial]

# Real coordinates of an even element: the 16 unit slots as multivectors.
_SLOT_UNITS: Tuple[Multivector, ...] = tuple(from_even_slots(row) for row in np.eye(16))
_SLOT_MATRIX: np.ndarray = np.column_stack([u.coeffs for u in _SLOT_UNITS])
_TRACE_MATRIX: np.ndarray = np.column_stack([(u + u.reverse()).coeffs for u in _SLOT_UNITS])


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorOptions:
    """Options for ``factorize_all``."""

    all_orderings: bool = False
    max_families: int = DEFAULT_MAX_FAMILIES
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    side: str = "left"

    def __post_init__(self) -> None:
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_families < 1:
            raise ValueError("max_families must be at least 1")


@dataclass(frozen=True)
class LinearFactor:
    """``t - h`` with ``(t - h)(t - h~) = M`` for the quadratic ``M``."""

    h: Multivector
    quadratic: QuadraticFactor
    side: str = "left"
    method: str = "geometric"

    @property
    def polynomial(self) -> EvenPolynomial:
        return EvenPolynomial.linear(self.h)

    @property
    def M(self) -> RealPolynomial:  # noqa: N802
        return self.quadratic.polynomial


@dataclass(frozen=True)
class Factorization:
    """Ordered linear factors with a constant ``lead``.

    Left side: ``C = (t - h1) ... (t - hn) lead``.
    Right side: ``C = lead (t - h1) ... (t - hn)``.
    """

    factors: Tuple[LinearFactor, ...]
    residual: float
    ordering_id: str
    lead: Multivector = ONE
    side: str = "left"

    def expand(self) -> EvenPolynomial:
        product: EvenPolynomial = EvenPolynomial.constant(1.0)
        for factor in self.factors:
            product = product * factor.polynomial
        if self.side == "left":
            return product * self.lead
        return self.lead * product


@dataclass(frozen=True)
class OrderingDiagnostic:
    """Outcome of one quadratic-factor ordering."""

    ordering_id: str
    status: str
    detail: str = ""
    methods: Tuple[str, ...] = ()


@dataclass(frozen=True)
class FactorReport:
    """All verified factorizations plus per-ordering diagnostics."""

    status: str
    factorizations: Tuple[Factorization, ...]
    diagnostics: Tuple[OrderingDiagnostic, ...] = field(default=())


def _poly(c: PolyLike) -> EvenPolynomial:
    return c.poly if isinstance(c, SpinorPolynomial) else c


def _real_or_raise(h: Multivector, what: str) -> Multivector:
    if h.imag_norm() > REAL_TOL * max(1.0, h.norm()):
        raise NonRealFactor(f"{what} factor keeps an imaginary residue of {h.imag_norm():.3e}")
    return h.real()


# ---------------------------------------------------------------------------
# Geometric method
# ---------------------------------------------------------------------------


def _annihilator_candidates(space: AnnihilatorSpace) -> List[CgaVector]:
    candidates: List[CgaVector] = list(space.basis)
    if space.dimension == 2:
        candidates.append(space.basis[0] + space.basis[1])
    return candidates


def _normalized_dot(a1: CgaVector, a2: CgaVector) -> float:
    return abs(dot(a1, a2)) / (a1.magnitude() * a2.magnitude())


def left_factor_geometric(
    c: PolyLike,
    z1: complex,
    z2: complex,
    annihilators: Optional[Tuple[CgaVector, CgaVector]] = None,
    quadratic: Optional[QuadraticFactor] = None,
) -> LinearFactor:
    """Left factor from annihilating points ``a1`` of ``C(z1)`` and ``a2`` of ``C(z2)``.

    ``h = z1 - (z1 - z2) / (2 a1.a2) a1 a2``.  In the conjugate case
    ``a2 = conj(a1)``; otherwise every pair of basis vectors (and their sums)
    is searched for the least orthogonal pair.  Explicit ``annihilators``
    bypass the search.

    Raises:
        NullEvaluationDegenerate: If ``C`` vanishes at ``z1`` or ``z2``.
        OrthogonalAnnihilators: If every pair is orthogonal.
        NonRealFactor: If ``h`` keeps an imaginary part.
    """
    poly: EvenPolynomial = _poly(c)
    if z1 == z2:
        raise ValueError("the geometric method needs distinct roots")
    size: float = max(1.0, poly.magnitude())
    n1: Multivector = poly(z1)
    n2: Multivector = poly(z2)
    if n1.norm() <= 1e-9 * size or n2.norm() <= 1e-9 * size:
        raise NullEvaluationDegenerate("polynomial vanishes at a root of its norm")

    if annihilators is not None:
        pairs: List[Tuple[CgaVector, CgaVector]] = [annihilators]
    else:
        space1: AnnihilatorSpace = left_annihilator_nullspace(
            NullDisplacement(n1, FACTOR_NULL_TOL), FACTOR_KERNEL_TOL
        )
        conjugate: bool = (
            abs(z2 - complex(z1).conjugate()) <= 1e-12 * max(1.0, abs(z1))
            and complex(z1).imag != 0.0
            and (n2 - n1.conj()).norm() <= 1e-9 * max(1.0, n1.norm())
        )
        if conjugate:
            pairs = [(a, a.conj()) for a in _annihilator_candidates(space1)]
        else:
            space2: AnnihilatorSpace = left_annihilator_nullspace(
                NullDisplacement(n2, FACTOR_NULL_TOL), FACTOR_KERNEL_TOL
            )
            pairs = [
                (a1, a2)
                for a1 in _annihilator_candidates(space1)
                for a2 in _annihilator_candidates(space2)
            ]

    best: Tuple[CgaVector, CgaVector] = max(pairs, key=lambda p: _normalized_dot(*p))
    score: float = _normalized_dot(*best)
    if score <= ORTHOGONAL_TOL:
        raise OrthogonalAnnihilators(f"annihilating points are orthogonal (|a1.a2|={score:.2e})")

    a1, a2 = best
    product: Multivector = a1.to_multivector() * a2.to_multivector()
    h: Multivector = z1 - product * ((z1 - z2) / (2.0 * dot(a1, a2)))
    quad: QuadraticFactor = quadratic or QuadraticFactor(complex(z1), complex(z2))
    logger.debug("Geometric factor for %s -- |a1.a2|=%.3e", quad.label, score)
    return LinearFactor(_real_or_raise(h, "geometric"), quad, "left", "geometric")


# ---------------------------------------------------------------------------
# Algebraic method
# ---------------------------------------------------------------------------


def _solve_common_zero(
    r0: Multivector,
    r1: Multivector,
    quad: QuadraticFactor,
    rng: np.random.Generator,
    max_families: int,
) -> Multivector:
    """Real ``h`` with ``r0 + h r1 = 0`` and ``(t - h)(t - h~) = M``."""
    trace: float = float((quad.z1 + quad.z2).real)
    product: float = float((quad.z1 * quad.z2).real)

    linear: np.ndarray = r1.right_matrix() @ _SLOT_MATRIX
    rhs_linear: np.ndarray = -r0.coeffs
    rhs_trace: np.ndarray = np.zeros(32, dtype=complex)
    rhs_trace[0] = trace
    system: np.ndarray = np.vstack(
        [linear.real, linear.imag, _TRACE_MATRIX.real, _TRACE_MATRIX.imag]
    )
    rhs: np.ndarray = np.concatenate(
        [rhs_linear.real, rhs_linear.imag, rhs_trace.real, rhs_trace.imag]
    )

    particular, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    inconsistency: float = float(np.linalg.norm(system @ particular - rhs))
    if inconsistency > 1e-8 * max(1.0, float(np.linalg.norm(rhs))):
        raise NoCommonZero(f"remainder and quadratic share no zero (residual {inconsistency:.2e})")
    kernel: np.ndarray = scipy.linalg.null_space(system, rcond=1e-9)
    k: int = kernel.shape[1]

    def element(y: np.ndarray) -> Multivector:
        return Multivector(_SLOT_MATRIX @ (particular + kernel @ y))

    def residual(y: np.ndarray) -> np.ndarray:
        h: Multivector = element(y)
        left: np.ndarray = (h * h.reverse()).coeffs
        right: np.ndarray = (h.reverse() * h).coeffs
        left = left - np.eye(32)[0] * product
        right = right - np.eye(32)[0] * product
        return np.concatenate([left.real, right.real])

    scale: float = max(1.0, abs(product))
    if k == 0:
        if np.linalg.norm(residual(np.zeros(0))) > 1e-9 * scale:
            raise NoCommonZero("unique linear solution misses the quadratic")
        return element(np.zeros(0))

    solutions: List[np.ndarray] = []
    dimension: int = 0
    starts: List[np.ndarray] = [np.zeros(k)]
    starts += [rng.standard_normal(k) for _ in range(FAMILY_STARTS)]
    for start in starts:
        fit = scipy.optimize.least_squares(
            residual, start, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=4000
        )
        if np.linalg.norm(fit.fun) > 1e-10 * scale:
            continue
        rank: int = int(np.linalg.matrix_rank(fit.jac, tol=1e-7 * max(1.0, np.abs(fit.jac).max())))
        dimension = max(dimension, k - rank)
        if all(np.linalg.norm(fit.x - s) > 1e-6 * max(1.0, np.linalg.norm(s)) for s in solutions):
            solutions.append(fit.x)
        if dimension == 0 or len(solutions) >= max_families:
            break

    if not solutions:
        raise NoCommonZero("remainder and quadratic share no zero")
    if dimension > 0:
        members: List[Multivector] = [element(y) for y in solutions[:max_families]]
        raise InfiniteFamily(
            f"left factors form a {dimension}-dimensional family", members, dimension
        )
    return element(solutions[0])


def left_factor_algebraic(
    c: PolyLike,
    quadratic: QuadraticFactor,
    seed: int = DEFAULT_SEED,
    max_families: int = DEFAULT_MAX_FAMILIES,
) -> LinearFactor:
    """Left factor from the remainder ``R = t r1 + r0`` of ``C`` modulo ``M``.

    For invertible ``r1`` the zero is ``h = -r0 r1^-1``.  Otherwise the
    linear condition ``R(h) = 0`` is solved jointly with ``M(h) = 0``.

    Raises:
        NoCommonZero: If ``R`` and ``M`` share no zero.
        InfiniteFamily: If the common zeros form a positive-dimensional family.
    """
    poly: EvenPolynomial = _poly(c)
    divisor: EvenPolynomial = EvenPolynomial.from_real(quadratic.polynomial)
    _, remainder = divide_left(poly, divisor)
    size: float = max(1.0, poly.magnitude())
    r0: Multivector = remainder.coefficient(0)
    r1: Multivector = remainder.coefficient(1)

    if r1.norm() <= 1e-10 * size and r0.norm() > 1e-10 * size:
        raise NoCommonZero("remainder is a nonzero constant")
    if r1.norm() > 1e-10 * size:
        try:
            h: Multivector = -(r0 * r1.inverse(tol=1e-9))
            logger.debug("Algebraic factor for %s -- invertible remainder", quadratic.label)
            return LinearFactor(_real_or_raise(h, "algebraic"), quadratic, "left", "algebraic")
        except NotInvertible:
            logger.debug("Remainder leading coefficient is a zero divisor")
    rng: np.random.Generator = np.random.default_rng(seed)
    h = _solve_common_zero(r0, r1, quadratic, rng, max_families)
    return LinearFactor(h, quadratic, "left", "algebraic")


# ---------------------------------------------------------------------------
# Double-root method
# ---------------------------------------------------------------------------


def left_factor_double_root(c: PolyLike, z: float) -> LinearFactor:
    """Left factor with ``M = (t - z)^2`` for a real double root ``z``.

    A factor exists exactly when ``C'(z)~ C(z)`` does not vanish.

    Raises:
        NullEvaluationDegenerate: If ``C(z) = 0``.
        NoFactor: If ``C'(z)~ C(z) = 0``.
        DegenerateData: If the linear system for the factor is degenerate.
    """
    poly: EvenPolynomial = _poly(c)
    z = float(np.real(z))
    shifted: EvenPolynomial = shift(poly, z)
    size: float = max(1.0, poly.magnitude())
    c0: Multivector = shifted.coefficient(0)
    c1: Multivector = shifted.coefficient(1)
    if c0.norm() <= 1e-9 * size:
        raise NullEvaluationDegenerate("polynomial vanishes at the double root")
    if (c1.reverse() * c0).norm() <= DOUBLE_ROOT_CRITERION_TOL * c1.norm() * c0.norm():
        raise NoFactor("C'(z)~ C(z) vanishes, so no factor exists for this double root")

    a: CgaVector = left_annihilator_nullspace(
        NullDisplacement(c0, FACTOR_NULL_TOL), FACTOR_KERNEL_TOL
    ).point
    a = canonical_vector(CgaVector.from_array(a.as_array().real))
    if abs(a.a_o) <= 1e-9 * a.magnitude():
        v: Multivector = ONE
        v_inv: Multivector = ONE
    else:
        v = a.to_multivector() + EINF
        v_inv = v.inverse()
    c0t: FourQuat = to_four_quat(v * c0 * v_inv)
    c1t: FourQuat = to_four_quat(v * c1 * v_inv)

    q1: Quaternion = c0t.q1
    q2: Quaternion = c0t.q3
    first: Quaternion = c1t.q0 + c1t.q3
    second: Quaternion = c1t.q2
    if first.is_zero(1e-10 * size) and second.is_zero(1e-10 * size):
        raise DegenerateData("both coefficients of the linear system vanish")
    system: np.ndarray = np.vstack([quat_right_matrix(first), quat_right_matrix(second)])
    rhs: np.ndarray = np.concatenate([q1.as_array(), q2.as_array()])
    solution, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    if np.linalg.norm(system @ solution - rhs) > 1e-8 * max(1.0, float(np.linalg.norm(rhs))):
        raise DegenerateData("linear system for the double-root factor is inconsistent")

    big_b: Quaternion = vect(Quaternion.from_array(solution))
    h_prime: Multivector = -(EPS1 * big_b.to_multivector())
    conjugated: EvenPolynomial = EvenPolynomial(v * q * v_inv for q in shifted.coeffs)
    check: float = left_evaluate(conjugated, h_prime).norm()
    if check > 1e-7 * size:
        raise DegenerateData(f"double-root candidate misses the polynomial ({check:.2e})")

    h: Multivector = v_inv * h_prime * v + z
    quad: QuadraticFactor = QuadraticFactor(complex(z), complex(z))
    logger.debug("Double-root factor at z=%.6g", z)
    return LinearFactor(_real_or_raise(h, "double-root"), quad, "left", "double_root")


# ---------------------------------------------------------------------------
# Right-side mirrors
# ---------------------------------------------------------------------------


def _mirror(factor: LinearFactor) -> LinearFactor:
    return LinearFactor(factor.h.reverse(), factor.quadratic, "right", factor.method)


def right_factor_geometric(
    c: PolyLike,
    z1: complex,
    z2: complex,
    annihilators: Optional[Tuple[CgaVector, CgaVector]] = None,
) -> LinearFactor:
    """Right factor ``t - h`` with ``C = Q (t - h)``, through ``C~``."""
    return _mirror(left_factor_geometric(_poly(c).reverse(), z1, z2, annihilators))


def right_factor_algebraic(
    c: PolyLike,
    quadratic: QuadraticFactor,
    seed: int = DEFAULT_SEED,
    max_families: int = DEFAULT_MAX_FAMILIES,
) -> LinearFactor:
    return _mirror(left_factor_algebraic(_poly(c).reverse(), quadratic, seed, max_families))


def right_factor_double_root(c: PolyLike, z: float) -> LinearFactor:
    return _mirror(left_factor_double_root(_poly(c).reverse(), z))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify(c: PolyLike, factorization: Factorization) -> float:
    """Largest coefficient deviation of the re-expanded product, relative to ``C``."""
    poly: EvenPolynomial = _poly(c)
    expanded: EvenPolynomial = factorization.expand()
    scale: float = max((q.norm() for q in poly.coeffs), default=0.0)
    if scale == 0.0:
        raise ValueError("cannot verify against the zero polynomial")
    size: int = max(len(poly.coeffs), len(expanded.coeffs))
    deviation: float = max(
        (expanded.coefficient(k) - poly.coefficient(k)).norm() for k in range(size)
    )
    return deviation / scale


def _same_factorization(a: Factorization, b: Factorization) -> bool:
    if len(a.factors) != len(b.factors):
        return False
    pairs: List[Tuple[Multivector, Multivector]] = [
        (fa.h, fb.h) for fa, fb in zip(a.factors, b.factors)
    ] + [(a.lead, b.lead)]
    return all((x - y).norm() <= DEDUPE_TOL * max(1.0, x.norm()) for x, y in pairs)


# ---------------------------------------------------------------------------
# Full factorization
# ---------------------------------------------------------------------------


@dataclass
class _WalkState:
    families: int = 0
    methods: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def _extract(
    poly: EvenPolynomial, quad: QuadraticFactor, options: FactorOptions
) -> LinearFactor:
    if poly.degree == 1:
        try:
            h: Multivector = -(poly.coefficient(0) * poly.coefficient(1).inverse(tol=1e-9))
        except NotInvertible as exc:
            raise NoFactor("linear polynomial with a non-invertible leading coefficient") from exc
        return LinearFactor(_real_or_raise(h, "linear"), quad, "left", "linear")
    if quad.is_double:
        return left_factor_double_root(poly, quad.z1.real)
    try:
        return left_factor_geometric(poly, quad.z1, quad.z2, quadratic=quad)
    except (
        OrthogonalAnnihilators,
        NullEvaluationDegenerate,
        EmptyKernel,
        KernelDimensionError,
        NotNullDisplacement,
        NonRealFactor,
    ) as exc:
        logger.debug("Geometric method failed for %s (%s) -- trying algebraic", quad.label, exc)
        return left_factor_algebraic(poly, quad, options.seed, options.max_families)


def _walk(
    poly: EvenPolynomial,
    ordering: Sequence[QuadraticFactor],
    prefix: Tuple[LinearFactor, ...],
    options: FactorOptions,
    state: _WalkState,
) -> List[Tuple[Tuple[LinearFactor, ...], Multivector]]:
    if len(prefix) == len(ordering) or poly.degree <= 0:
        return [(prefix, poly.coefficient(0))]
    quad: QuadraticFactor = ordering[len(prefix)]
    try:
        candidates: List[LinearFactor] = [_extract(poly, quad, options)]
    except InfiniteFamily as family:
        state.families += 1
        candidates = [
            LinearFactor(h, quad, "left", "family") for h in family.members[: options.max_families]
        ]
        logger.debug("Family of dimension %d at %s", family.dimension, quad.label)

    results: List[Tuple[Tuple[LinearFactor, ...], Multivector]] = []
    for factor in candidates:
        state.methods.append(factor.method)
        quotient, remainder = divide_right(poly, factor.polynomial)
        if remainder.magnitude() > REMAINDER_TOL * max(1.0, poly.magnitude()):
            state.notes.append(f"{quad.label}: factor does not divide ({factor.method})")
            continue
        results.extend(_walk(quotient, ordering, prefix + (factor,), options, state))
    return results


def _factorize_left(
    poly: EvenPolynomial, options: FactorOptions
) -> Tuple[List[Factorization], List[OrderingDiagnostic], bool]:
    norm: RealPolynomial = norm_poly(poly, options.tol)
    orderings: List[Tuple[QuadraticFactor, ...]] = quadratic_orderings(norm)
    found: List[Factorization] = []
    diagnostics: List[OrderingDiagnostic] = []
    hit_family: bool = False

    for ordering in tqdm(orderings, desc="Orderings", unit="ord", disable=None, leave=False):
        oid: str = ordering_id(ordering)
        state: _WalkState = _WalkState()
        try:
            walked = _walk(poly, ordering, (), options, state)
        except SpinorFactError as exc:
            diagnostics.append(
                OrderingDiagnostic(
                    oid, "failed", f"{type(exc).__name__}: {exc}", tuple(state.methods)
                )
            )
            logger.debug("Ordering %s failed -- %s", oid, exc)
            continue

        accepted: int = 0
        for factors, lead in walked:
            candidate: Factorization = Factorization(tuple(factors), 0.0, oid, lead, "left")
            residual: float = verify(poly, candidate)
            if residual > ACCEPT_TOL:
                state.notes.append(f"re-expansion residual {residual:.2e}")
                continue
            candidate = Factorization(tuple(factors), residual, oid, lead, "left")
            if not any(_same_factorization(candidate, other) for other in found):
                found.append(candidate)
            accepted += 1

        hit_family = hit_family or state.families > 0
        status: str = "factored" if accepted else "failed"
        if state.families:
            status = "infinite_family"
        diagnostics.append(
            OrderingDiagnostic(oid, status, "; ".join(state.notes), tuple(state.methods))
        )
        if accepted and not options.all_orderings:
            break
    return found, diagnostics, hit_family


def factorize_all(c: PolyLike, options: Optional[FactorOptions] = None) -> FactorReport:
    """Factorizations of ``C`` into linear factors, one per quadratic ordering.

    Without ``all_orderings`` the walk stops at the first ordering that
    yields a verified factorization.  Failures never raise; they are
    recorded in the diagnostics.
    """
    opts: FactorOptions = options or FactorOptions()
    poly: EvenPolynomial = _poly(c)
    t_start: float = time.monotonic()

    if opts.side == "left":
        found, diagnostics, hit_family = _factorize_left(poly, opts)
    else:
        mirrored, diagnostics, hit_family = _factorize_left(poly.reverse(), opts)
        found = []
        for fact in mirrored:
            factors: Tuple[LinearFactor, ...] = tuple(_mirror(f) for f in reversed(fact.factors))
            right: Factorization = Factorization(
                factors, 0.0, fact.ordering_id, fact.lead.reverse(), "right"
            )
            found.append(
                Factorization(factors, verify(poly, right), fact.ordering_id, right.lead, "right")
            )

    if hit_family:
        status: str = "infinite_family"
    elif found:
        status = "factored"
    else:
        status = "no_factorization"
    elapsed_ms: float = (time.monotonic() - t_start) * 1000.0
    logger.info(
        "Factorization finished in %.1f ms -- %d result(s), status=%s",
        elapsed_ms,
        len(found),
        status,
    )
    return FactorReport(status, tuple(found), tuple(diagnostics))


# ---------------------------------------------------------------------------
# Worked constructions
# ---------------------------------------------------------------------------


def perturbed_rotation_polynomial(a: float, b: float) -> EvenPolynomial:
    """``t^2 + 1 + eps1 (b t i + a j)``; a factorization exists iff ``a = b``."""
    return EvenPolynomial(
        [
            ONE + a * (EPS1 * QJ),
            b * (EPS1 * QI),
            ONE,
        ]
    )


def perturbed_rotation_annihilators(
    mu1: complex, mu2: complex, lam1: complex, lam2: complex
) -> Tuple[CgaVector, CgaVector]:
    """Annihilating points of ``C(i)`` and ``C(-i)`` for the rotation with ``a = b``.

    ``a1 = mu1 (i e1 + e2) + lam1 e_inf`` and ``a2 = mu2 (-i e1 + e2) + lam2 e_inf``.
    """
    a1: CgaVector = CgaVector(0j, 1j * mu1, mu1, 0j, lam1)
    a2: CgaVector = CgaVector(0j, -1j * mu2, mu2, 0j, lam2)
    return a1, a2


def rulings_condition(c: PolyLike, z1: complex, z2: complex) -> Multivector:
    """``C(z1)~ C(z2)``; nonzero is sufficient but not necessary for a factor."""
    poly: EvenPolynomial = _poly(c)
    return poly(z1).reverse() * poly(z2)


def format_four_quat(q: Multivector, digits: int = 6) -> str:
    """``q0 + eps1(q1) + eps2(q2) + eps3(q3)`` with zero parts omitted."""
    parts: FourQuat = to_four_quat(q)
    names: Tuple[str, ...] = ("", "eps1", "eps2", "eps3")
    terms: List[str] = []
    for name, quat in zip(names, (parts.q0, parts.q1, parts.q2, parts.q3)):
        if quat.is_zero(10.0 ** (-digits)):
            continue
        body: str = _format_quaternion(quat, digits)
        terms.append(body if not name else f"{name}({body})")
    return " + ".join(terms) if terms else "0"


def _format_quaternion(q: Quaternion, digits: int) -> str:
    units: Tuple[str, ...] = ("", "i", "j", "k")
    pieces: List[str] = []
    for unit, value in zip(units, q.as_array()):
        value = complex(np.round(value, digits))
        if value == 0:
            continue
        shown: str = f"{value.real:g}" if value.imag == 0 else f"({value.real:g}{value.imag:+g}I)"
        pieces.append(f"{shown}{unit}")
    return " + ".join(pieces) if pieces else "0"


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _configure_logging(verbose: bool) -> None:
    """Set up root logging format and level."""
    level: int = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%H:%M:%S",
    )


def main() -> None:
    """CLI entry-point: factor the perturbed rotation for a few parameters."""
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        description="Factor t^2 + 1 + eps1(b t i + a j) for a few (a, b).",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--all", action="store_true", help="Explore every ordering")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    args: argparse.Namespace = parser.parse_args()
    _configure_logging(args.verbose)

    sep: str = "=" * 55
    print(f"\n{sep}\n  Perturbed rotation factorizations\n{sep}")
    summary: Dict[str, str] = {}
    for a, b in ((1.0, 1.0), (2.0, 1.0)):
        report: FactorReport = factorize_all(
            perturbed_rotation_polynomial(a, b), FactorOptions(all_orderings=args.all)
        )
        summary[f"a={a:g}, b={b:g}"] = report.status
        for fact in report.factorizations:
            print(f"\n  a={a:g} b={b:g} residual={fact.residual:.2e}")
            for factor in fact.factors:
                print(f"    t - ({format_four_quat(factor.h)})  [{factor.method}]")
    print()
    for key, status in summary.items():
        print(f"  {key}: {status}")
    print(f"\n{sep}\n")


if __name__ == "__main__":
    main()
