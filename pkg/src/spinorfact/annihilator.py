"""Annihilating points of null displacements.

A null displacement ``n`` (an even element on both the Study variety and the
null quadric) has a nonzero vector ``x`` with ``x n = 0``.  Such a vector is
always a point and is generically unique up to scale.  Three interchangeable
methods compute it:

* ``nullspace`` -- kernel of the linear map ``x -> x n`` (default).
* ``sandwich``  -- ``n x n~`` for a random probe ``x``.
* ``cases``     -- an explicit case cascade on the four-quaternion form.

Right annihilators (``n x = 0``) are the left annihilators of ``n~``.

Usage:
    poetry run python -m spinorfact.annihilator
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
import scipy.linalg

from spinorfact.cga_core import (
    E_INF,
    E_O,
    EINF,
    EO,
    CgaVector,
    FourQuat,
    Multivector,
    Quaternion,
    is_null,
    is_study,
    qnorm,
    quat_s,
    to_four_quat,
    vect,
    vector_from_quaternion,
)
from spinorfact.errors import (
    EmptyKernel,
    InternalCaseFailure,
    KernelDimensionError,
    NotNullDisplacement,
    NowhereDefined,
    ProbeAnnihilated,
    ZeroElement,
)

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

DEFAULT_NULL_TOL: float = 1e-8
DEFAULT_KERNEL_TOL: float = 1e-8
DEFAULT_MAX_PROBES: int = 8
DEFAULT_SEED: int = 0
VANISH_TOL: float = 1e-9
CASE_RESIDUAL_TOL: float = 1e-8
METHODS: Tuple[str, ...] = ("nullspace", "sandwich", "cases")

logger: logging.Logger = logging.getLogger(__name__)

_BASIS: Tuple[Multivector, ...] = (
    EO,
    Multivector.blade(0b001),
    Multivector.blade(0b010),
    Multivector.blade(0b100),
    EINF,
)


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullDisplacement:
    """A point of the Study variety on the null quadric, scaled to unit size.

    Raises:
        ZeroElement: If ``n`` vanishes.
        NotNullDisplacement: If ``n`` fails the Study or null test at ``tol``.
    """

    n: Multivector
    tol: float = field(default=DEFAULT_NULL_TOL, compare=False)

    def __post_init__(self) -> None:
        magnitude: float = self.n.norm()
        if magnitude == 0.0:
            raise ZeroElement("a null displacement must be nonzero")
        unit: Multivector = self.n / magnitude
        if not is_study(unit, self.tol):
            raise NotNullDisplacement("element is not on the Study variety")
        if not is_null(unit, self.tol):
            raise NotNullDisplacement("element is not on the null quadric")
        object.__setattr__(self, "n", unit)

    def reverse(self) -> NullDisplacement:
        return NullDisplacement(self.n.reverse(), self.tol)

    def four_quat(self) -> FourQuat:
        return to_four_quat(self.n)


@dataclass(frozen=True)
class AnnihilatorSpace:
    """Basis of the left or right annihilating vectors of a null displacement."""

    basis: Tuple[CgaVector, ...]
    side: str = "left"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def generic(self) -> bool:
        return self.dimension == 1

    @property
    def point(self) -> CgaVector:
        return self.basis[0]


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def canonical_vector(x: CgaVector) -> CgaVector:
    """Scale to unit size with the largest coordinate real and positive."""
    arr: np.ndarray = x.as_array()
    magnitude: float = float(np.linalg.norm(arr))
    if magnitude == 0.0:
        raise ZeroElement("cannot normalize the zero vector")
    pivot: complex = complex(arr[int(np.argmax(np.abs(arr)))])
    return CgaVector.from_array(arr / magnitude * (abs(pivot) / pivot))


def projective_angle(u: CgaVector, v: CgaVector) -> float:
    """Sine of the angle between the complex lines spanned by ``u`` and ``v``."""
    a: np.ndarray = u.as_array()
    b: np.ndarray = v.as_array()
    denom: float = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if denom == 0.0:
        raise ZeroElement("projective angle needs nonzero vectors")
    residual: np.ndarray = b - (np.vdot(a, b) / np.vdot(a, a)) * a
    return float(np.linalg.norm(residual) / np.linalg.norm(b))


def _as_displacement(n: NullDisplacement | Multivector) -> NullDisplacement:
    return n if isinstance(n, NullDisplacement) else NullDisplacement(n)


def _annihilation_matrix(n: Multivector) -> np.ndarray:
    """Columns are ``b n`` for the basis ``(e_o, e1, e2, e3, e_inf)``."""
    return np.column_stack([(b * n).coeffs for b in _BASIS])


# ---------------------------------------------------------------------------
# Nullspace method
# ---------------------------------------------------------------------------


def left_annihilator_nullspace(
    n: NullDisplacement | Multivector, tol: float = DEFAULT_KERNEL_TOL
) -> AnnihilatorSpace:
    """Kernel of ``x -> x n`` by singular value thresholding.

    Raises:
        EmptyKernel: If no annihilating vector exists.
        KernelDimensionError: If the kernel is larger than two.
    """
    disp: NullDisplacement = _as_displacement(n)
    kernel: np.ndarray = scipy.linalg.null_space(_annihilation_matrix(disp.n), rcond=tol)
    dim: int = kernel.shape[1]
    if dim == 0:
        raise EmptyKernel("no left annihilating vector found")
    if dim > 2:
        raise KernelDimensionError(f"annihilator kernel has dimension {dim}")
    basis: Tuple[CgaVector, ...] = tuple(
        canonical_vector(CgaVector.from_array(kernel[:, k])) for k in range(dim)
    )
    logger.debug("Nullspace annihilator -- dimension=%d", dim)
    return AnnihilatorSpace(basis, "left")


# ---------------------------------------------------------------------------
# Sandwich method
# ---------------------------------------------------------------------------


def _sandwich_image(n: Multivector, probe: CgaVector) -> CgaVector:
    image: Multivector = (n * probe.to_multivector() * n.reverse()).grade(1)
    return CgaVector.from_multivector(image, tol=1.0)


def left_annihilator_sandwich(
    n: NullDisplacement | Multivector,
    probe: Optional[CgaVector] = None,
    rng: Optional[np.random.Generator] = None,
    max_probes: int = DEFAULT_MAX_PROBES,
    tol: float = DEFAULT_KERNEL_TOL,
) -> CgaVector:
    """``n x n~`` for a probe ``x``; the image is a left annihilating point.

    With an explicit ``probe`` a vanishing image raises ``ProbeAnnihilated``.
    Without one, up to ``max_probes`` random probes are tried.

    Raises:
        ProbeAnnihilated: The explicit probe was mapped to zero.
        NowhereDefined: Every random probe vanished.
    """
    disp: NullDisplacement = _as_displacement(n)
    if probe is not None:
        image: CgaVector = _sandwich_image(disp.n, probe)
        if image.magnitude() <= tol * probe.magnitude():
            raise ProbeAnnihilated("probe mapped to zero by the sandwich")
        return canonical_vector(image)

    generator: np.random.Generator = rng if rng is not None else np.random.default_rng(
        DEFAULT_SEED
    )
    for attempt in range(max_probes):
        candidate: CgaVector = CgaVector.from_array(generator.standard_normal(5))
        try:
            return left_annihilator_sandwich(disp, probe=candidate, tol=tol)
        except ProbeAnnihilated:
            logger.debug("Sandwich probe %d annihilated", attempt)
    raise NowhereDefined(f"all {max_probes} sandwich probes vanished")


# ---------------------------------------------------------------------------
# Case cascade
# ---------------------------------------------------------------------------


def _vanishes(q: Quaternion) -> bool:
    return q.is_zero(VANISH_TOL)


def _accept(n: Multivector, x: CgaVector) -> bool:
    size: float = x.magnitude()
    if size <= VANISH_TOL:
        return False
    return (x.to_multivector() * n).norm() <= CASE_RESIDUAL_TOL * size


def _parallel(a: Quaternion, b: Quaternion) -> bool:
    va: np.ndarray = a.as_array()[1:]
    vb: np.ndarray = b.as_array()[1:]
    cross: np.ndarray = np.cross(va, vb)
    return bool(np.linalg.norm(cross) <= 1e-7 * np.linalg.norm(va) * np.linalg.norm(vb))


def _least_singular(matrix: np.ndarray) -> np.ndarray:
    """Right singular vector of the smallest singular value."""
    _, _, vh = np.linalg.svd(matrix)
    return vh[-1].conj()


@dataclass(frozen=True)
class _Rulings:
    """The quaternions ``U_k = q r conj(q)`` of ``q1, q2, q0 + q3, q0 - q3``.

    Writing ``x n = 0`` coefficient-wise gives four quaternion equations,
    one each for ``e_o``, ``e_inf`` and ``e123``, and the pseudoscalar one
    combined with the ``e123`` one.  ``right`` builds ``x`` from
    ``X = l2 U2 + l4 U4``, which settles the ``e_o`` and ``e123`` equations.
    ``left`` builds it from ``X = l1 U1 + l3 U3``, which settles the other two.
    """

    q1: Quaternion
    q2: Quaternion
    s: Quaternion
    d: Quaternion
    r: Quaternion
    u: Tuple[Quaternion, Quaternion, Quaternion, Quaternion]

    @classmethod
    def draw(cls, f: FourQuat, generator: np.random.Generator) -> _Rulings:
        s: Quaternion = f.q0 + f.q3
        d: Quaternion = f.q0 - f.q3
        quats: Tuple[Quaternion, ...] = (f.q1, f.q2, s, d)
        for attempt in range(DEFAULT_MAX_PROBES):
            r: Quaternion = Quaternion(0j, *generator.standard_normal(3).astype(complex))
            u = tuple(q * r * q.conj() for q in quats)
            if all(_vanishes(q) or not _vanishes(uk) for q, uk in zip(quats, u)):
                return cls(f.q1, f.q2, s, d, r, u)  # type: ignore[arg-type]
            logger.debug("Draw %d of r collapsed a ruling", attempt)
        raise InternalCaseFailure("no random quaternion keeps the rulings nonzero")

    def x_o_right(self) -> complex:
        """``x_o`` per unit ``l4``."""
        return -quat_s(self.d, self.q2 * self.r.conj())

    def x_inf_right(self) -> complex:
        """``x_inf`` per unit ``l2``."""
        return quat_s(self.q2, self.d * self.r.conj()) / 2

    def x_o_left(self) -> complex:
        """``x_o`` per unit ``l1``."""
        return quat_s(self.q1, self.s * self.r.conj()) / 2

    def x_inf_left(self) -> complex:
        """``x_inf`` per unit ``l3``."""
        return -quat_s(self.s, self.q1 * self.r.conj())

    def right(self, l2: complex, l4: complex) -> CgaVector:
        _, u2, _, u4 = self.u
        return vector_from_quaternion(
            l4 * self.x_o_right(), u2 * l2 + u4 * l4, l2 * self.x_inf_right()
        )

    def left(self, l1: complex, l3: complex) -> CgaVector:
        u1, _, u3, _ = self.u
        return vector_from_quaternion(
            l1 * self.x_o_left(), u1 * l1 + u3 * l3, l3 * self.x_inf_left()
        )

    def coplanar_matrix(self) -> np.ndarray:
        """Columns for ``l1 U1 - l2 U2 + l3 U3 - l4 U4 = 0``."""
        u1, u2, u3, u4 = self.u
        return np.column_stack(
            [u1.as_array(), -u2.as_array(), u3.as_array(), -u4.as_array()]
        )

    def from_coefficients(self, lam: np.ndarray) -> CgaVector:
        """``X = l2 U2 + l4 U4`` for ``l1 U1 + l3 U3 = l2 U2 + l4 U4``.

        ``x_o`` comes from the ``e_o`` equation and ``x_inf`` from the
        ``e_inf`` one.
        """
        _, l2, l3, l4 = lam
        _, u2, _, u4 = self.u
        return vector_from_quaternion(
            l4 * self.x_o_right(), u2 * l2 + u4 * l4, l3 * self.x_inf_left()
        )


def _pencil(n: Multivector, build: Callable[[complex, complex], CgaVector]) -> CgaVector:
    """The member of a two-parameter family of vectors that annihilates ``n``."""
    first: CgaVector = build(1.0, 0.0)
    second: CgaVector = build(0.0, 1.0)
    matrix: np.ndarray = np.column_stack(
        [(v.to_multivector() * n).coeffs for v in (first, second)]
    )
    a, b = _least_singular(matrix)
    return first * complex(a) + second * complex(b)


def _ruled_case(n: Multivector, rulings: _Rulings) -> Tuple[str, CgaVector]:
    """All of ``q1, q2, q0 + q3, q0 - q3`` are nonzero null quaternions on one ruling."""
    u1, u2, u3, u4 = rulings.u
    coplanar: np.ndarray = rulings.coplanar_matrix()
    if _parallel(u1, u2):
        # [q1] = [q2] and [q0 + q3] = [q0 - q3]; both x_o and both x_inf must agree
        agree_o: np.ndarray = np.array(
            [rulings.x_o_left(), 0.0, 0.0, -rulings.x_o_right()], dtype=complex
        )
        agree_inf: np.ndarray = np.array(
            [0.0, -rulings.x_inf_right(), rulings.x_inf_left(), 0.0], dtype=complex
        )
        system: np.ndarray = np.vstack([coplanar, agree_o, agree_inf])
        return "3.2", rulings.from_coefficients(_least_singular(system))
    if _parallel(u1, u3):
        return "3.3", _pencil(n, rulings.right)
    if _parallel(u2, u4):
        return "3.3", _pencil(n, rulings.left)
    return "3.1", rulings.from_coefficients(_least_singular(coplanar))


def left_annihilator_cases_traced(
    n: NullDisplacement | Multivector, rng: Optional[np.random.Generator] = None
) -> Tuple[CgaVector, str]:
    """Case cascade on ``n = q0 + eps1 q1 + eps2 q2 + eps3 q3``.

    The unknown is ``x = x_o e_o + X e123 + x_inf e_inf`` with a vectorial
    quaternion ``X``.  Cases 1 and 2 are closed forms.  When they all vanish,
    ``q1, q2, q0 + q3, q0 - q3`` are null quaternions on a common ruling and
    ``X`` is assembled from ``U_k = q r conj(q)`` for a random vectorial ``r``:
    case 3 when none of them vanishes, case 4 otherwise.  Returns the
    annihilator and the label of the case that produced it.

    Raises:
        InternalCaseFailure: If the selected case yields no verified solution.
    """
    disp: NullDisplacement = _as_displacement(n)
    nm: Multivector = disp.n
    f: FourQuat = disp.four_quat()
    q0, q1, q2, q3 = f.q0, f.q1, f.q2, f.q3
    d: Quaternion = q0 - q3
    s: Quaternion = q0 + q3

    explicit: List[Tuple[str, Callable[[], CgaVector]]] = [
        ("1.1", lambda: vector_from_quaternion(-qnorm(q2), vect(q2 * d.conj()), -qnorm(d) / 2)),
        ("1.2", lambda: vector_from_quaternion(-qnorm(s) / 2, vect(q1 * s.conj()), -qnorm(q1))),
        ("2.1", lambda: vector_from_quaternion(0.0, vect(q2 * s.conj()), -2 * qnorm(q0))),
        ("2.2", lambda: vector_from_quaternion(-2 * qnorm(q0), vect(q1 * d.conj()), 0.0)),
    ]
    for label, build in explicit:
        candidate: CgaVector = build()
        if _accept(nm, candidate):
            logger.debug("Annihilator case %s applies", label)
            return canonical_vector(candidate), label

    zero_q1, zero_q2, zero_s, zero_d = (_vanishes(q) for q in (q1, q2, s, d))
    if zero_q1 and zero_d:
        label, candidate = "4.4", E_O
    elif zero_q2 and zero_s:
        label, candidate = "4.5", E_INF
    else:
        generator: np.random.Generator = (
            rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
        )
        rulings: _Rulings = _Rulings.draw(f, generator)
        if zero_q1 and zero_s:
            label, candidate = "4.2", rulings.right(1.0, 1.0)
        elif zero_q2 and zero_d:
            label, candidate = "4.3", rulings.left(1.0, 1.0)
        elif zero_q1:
            label, candidate = "4.1", rulings.right(0.0, 1.0)
        elif zero_q2:
            label, candidate = "4.1b", rulings.left(0.0, 1.0)
        elif zero_s:
            label, candidate = "4.1c", rulings.right(1.0, 0.0)
        elif zero_d:
            label, candidate = "4.1d", rulings.left(1.0, 0.0)
        else:
            label, candidate = _ruled_case(nm, rulings)

    if not _accept(nm, candidate):
        raise InternalCaseFailure(f"case {label} of the annihilator cascade gave no solution")
    logger.debug("Annihilator case %s applies", label)
    return canonical_vector(candidate), label


def left_annihilator_cases(
    n: NullDisplacement | Multivector, rng: Optional[np.random.Generator] = None
) -> CgaVector:
    return left_annihilator_cases_traced(n, rng)[0]


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def left_annihilator(
    n: NullDisplacement | Multivector,
    method: str = "nullspace",
    tol: float = DEFAULT_KERNEL_TOL,
    rng: Optional[np.random.Generator] = None,
) -> AnnihilatorSpace:
    """Left annihilator space by the chosen method.

    ``sandwich`` and ``cases`` produce a single point.  ``cases`` falls back
    to the nullspace method when the cascade fails.
    """
    if method not in METHODS:
        raise ValueError(f"unknown annihilator method {method!r}; choose from {METHODS}")
    disp: NullDisplacement = _as_displacement(n)
    if method == "nullspace":
        return left_annihilator_nullspace(disp, tol)
    if method == "sandwich":
        return AnnihilatorSpace((left_annihilator_sandwich(disp, rng=rng, tol=tol),), "left")
    try:
        return AnnihilatorSpace((left_annihilator_cases(disp, rng),), "left")
    except InternalCaseFailure as exc:
        logger.warning("Case cascade failed (%s) -- falling back to nullspace", exc)
        return left_annihilator_nullspace(disp, tol)


def right_annihilator(
    n: NullDisplacement | Multivector,
    method: str = "nullspace",
    tol: float = DEFAULT_KERNEL_TOL,
    rng: Optional[np.random.Generator] = None,
) -> AnnihilatorSpace:
    """``{x : n x = 0}``, the left annihilators of ``n~``."""
    disp: NullDisplacement = _as_displacement(n)
    space: AnnihilatorSpace = left_annihilator(disp.reverse(), method, tol, rng)
    return AnnihilatorSpace(space.basis, "right")


def classify(n: NullDisplacement | Multivector, tol: float = DEFAULT_KERNEL_TOL) -> str:
    """``generic`` for a one-dimensional left kernel, ``special`` for two."""
    return "generic" if left_annihilator_nullspace(n, tol).generic else "special"


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def sample_null_displacement(rng: np.random.Generator, degree: int = 2) -> Multivector:
    """Value of a random spinor polynomial at a simple root of its norm."""
    from spinorfact.spinor_poly import find_roots, norm_poly, random_spinor_polynomial

    while True:
        poly = random_spinor_polynomial(rng, degree)
        roots = find_roots(norm_poly(poly, tol=1e-9))
        simple: List[complex] = [z for z, m in roots.roots if m == 1]
        if simple:
            return poly(simple[int(rng.integers(len(simple)))])


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
    """CLI entry-point: compare annihilator methods on random null displacements."""
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        description="Compare the annihilator methods on random null displacements.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--samples", type=int, default=20, help="Number of samples")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    args: argparse.Namespace = parser.parse_args()
    _configure_logging(args.verbose)

    rng: np.random.Generator = np.random.default_rng(args.seed)
    worst: float = 0.0
    for _ in range(args.samples):
        n: Multivector = sample_null_displacement(rng)
        reference: CgaVector = left_annihilator_nullspace(n).point
        traced, label = left_annihilator_cases_traced(n, rng)
        worst = max(worst, projective_angle(reference, traced))
        logger.debug("case %s -- angle %.3e", label, projective_angle(reference, traced))
    print(f"  samples={args.samples}  worst projective angle={worst:.3e}")


if __name__ == "__main__":
    main()
