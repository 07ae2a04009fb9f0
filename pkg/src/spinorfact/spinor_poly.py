"""Polynomials over the even sub-algebra with a central indeterminate ``t``.

Coefficients are stored densely in ascending degree.  The module provides
the ring operations, reversion and the norm polynomial ``C C~``, left and
right evaluation, division with remainder on either side and complex root
finding for real polynomials.  ``quadratic_orderings`` enumerates the ordered
sequences of monic real quadratic factors a factorization walks through.

Usage:
    poetry run python -m spinorfact.spinor_poly --roots 1 0 2 0 1
"""

from __future__ import annotations

import argparse
import itertools
import logging
import math
import numbers
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from spinorfact.cga_core import (
    DEFAULT_TOL,
    Multivector,
    random_vector,
    wedge,
)
from spinorfact.errors import (
    NoConvergence,
    NonInvertibleLeadingCoefficient,
    NotInvertible,
    NotSpinor,
    OddDegree,
)

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

MAX_ROOT_ITERATIONS: int = 200
CLUSTER_EPS: float = 1e-12
CLUSTER_SPREAD: float = 10.0
MULTIPLE_ROOT_TOL: float = 1e-10
REAL_SNAP_TOL: float = 1e-9
DEFAULT_ROOT_TOL: float = 1e-9
_ANGLE_OFFSET: float = 0.4

logger: logging.Logger = logging.getLogger(__name__)

Coefficient = Union[Multivector, complex, float, int]


# ---------------------------------------------------------------------------
# Real polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial, coefficients in ascending degree, no trailing zeros."""

    coeffs: Tuple[float, ...]

    def __post_init__(self) -> None:
        values: List[float] = [float(c) for c in self.coeffs]
        if not all(math.isfinite(c) for c in values):
            raise ValueError("RealPolynomial coefficients must be finite")
        while values and values[-1] == 0.0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_roots(cls, roots: Iterable[complex]) -> RealPolynomial:
        values: np.ndarray = npoly.polyfromroots(list(roots))
        return cls(tuple(np.real(values)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z: complex) -> complex:
        return complex(npoly.polyval(z, self.coeffs)) if self.coeffs else 0j

    def __mul__(self, other: RealPolynomial) -> RealPolynomial:
        if self.is_zero() or other.is_zero():
            return RealPolynomial(())
        return RealPolynomial(tuple(npoly.polymul(self.coeffs, other.coeffs)))

    def monic(self) -> RealPolynomial:
        if self.is_zero():
            raise ValueError("the zero polynomial has no monic normalization")
        lead: float = self.coeffs[-1]
        return RealPolynomial(tuple(c / lead for c in self.coeffs))

    def derivative(self, order: int = 1) -> RealPolynomial:
        if self.degree < order:
            return RealPolynomial(())
        return RealPolynomial(tuple(npoly.polyder(self.coeffs, order)))

    def magnitude(self) -> float:
        return float(np.linalg.norm(self.coeffs)) if self.coeffs else 0.0

    def isclose(self, other: RealPolynomial, tol: float = 1e-9) -> bool:
        size: int = max(len(self.coeffs), len(other.coeffs))
        a: np.ndarray = np.zeros(size)
        b: np.ndarray = np.zeros(size)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return bool(np.linalg.norm(a - b) <= tol * max(1.0, np.linalg.norm(a), np.linalg.norm(b)))


# ---------------------------------------------------------------------------
# Even polynomials
# ---------------------------------------------------------------------------


def _as_multivector(value: Coefficient) -> Multivector:
    if isinstance(value, Multivector):
        return value
    return Multivector.scalar(complex(value))


class EvenPolynomial:
    """Polynomial ``sum t^i q_i`` with multivector coefficients.

    Exactly vanishing leading coefficients are stripped, so the zero
    polynomial has no coefficients at all.  ``t`` commutes with everything.
    """

    __slots__ = ("_coeffs",)
    __array_ufunc__ = None

    def __init__(self, coeffs: Iterable[Coefficient]) -> None:
        values: List[Multivector] = [_as_multivector(c) for c in coeffs]
        while values and not np.any(values[-1].coeffs):
            values.pop()
        self._coeffs: Tuple[Multivector, ...] = tuple(values)

    # --- constructors ---
    @classmethod
    def constant(cls, q: Coefficient) -> EvenPolynomial:
        return cls([q])

    @classmethod
    def linear(cls, h: Coefficient) -> EvenPolynomial:
        """The monic linear polynomial ``t - h``."""
        return cls([-_as_multivector(h), 1.0])

    @classmethod
    def from_real(cls, p: RealPolynomial) -> EvenPolynomial:
        return cls(p.coeffs)

    # --- accessors ---
    @property
    def coeffs(self) -> Tuple[Multivector, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Multivector:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.norm() <= tol for c in self._coeffs)

    def magnitude(self) -> float:
        """Sum of the coefficient norms."""
        return float(sum(c.norm() for c in self._coeffs))

    def coefficient(self, k: int) -> Multivector:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Multivector.zero()

    def trim(self, tol: float) -> EvenPolynomial:
        """Drop trailing coefficients below ``tol`` times the largest one."""
        scale: float = max((c.norm() for c in self._coeffs), default=0.0)
        values: List[Multivector] = list(self._coeffs)
        while values and values[-1].norm() <= tol * scale:
            values.pop()
        return EvenPolynomial(values)

    # --- arithmetic ---
    def __add__(self, other: object) -> EvenPolynomial:
        if isinstance(other, (Multivector, numbers.Number)):
            other = EvenPolynomial.constant(other)  # type: ignore[arg-type]
        if not isinstance(other, EvenPolynomial):
            return NotImplemented
        size: int = max(len(self._coeffs), len(other._coeffs))
        return EvenPolynomial(self.coefficient(k) + other.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self) -> EvenPolynomial:
        return EvenPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: object) -> EvenPolynomial:
        if isinstance(other, (EvenPolynomial, Multivector, numbers.Number)):
            return self + (-other)  # type: ignore[operator]
        return NotImplemented

    def __rsub__(self, other: object) -> EvenPolynomial:
        return (-self) + other

    def __mul__(self, other: object) -> EvenPolynomial:
        if isinstance(other, (Multivector, numbers.Number)):
            return EvenPolynomial(c * other for c in self._coeffs)  # type: ignore[operator]
        if not isinstance(other, EvenPolynomial):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return EvenPolynomial(())
        acc: List[np.ndarray] = [
            np.zeros(32, dtype=complex) for _ in range(self.degree + other.degree + 1)
        ]
        for i, a in enumerate(self._coeffs):
            lmat: np.ndarray = a.left_matrix()
            for j, b in enumerate(other._coeffs):
                acc[i + j] = acc[i + j] + lmat @ b.coeffs
        return EvenPolynomial(Multivector(c) for c in acc)

    def __rmul__(self, other: object) -> EvenPolynomial:
        if isinstance(other, (Multivector, numbers.Number)):
            return EvenPolynomial(other * c for c in self._coeffs)  # type: ignore[operator]
        return NotImplemented

    # --- involutions ---
    def reverse(self) -> EvenPolynomial:
        return EvenPolynomial(c.reverse() for c in self._coeffs)

    def conj(self) -> EvenPolynomial:
        return EvenPolynomial(c.conj() for c in self._coeffs)

    # --- evaluation ---
    def __call__(self, z: complex) -> Multivector:
        """Value at a central scalar ``z``."""
        acc: np.ndarray = np.zeros(32, dtype=complex)
        for c in reversed(self._coeffs):
            acc = acc * z + c.coeffs
        return Multivector(acc)

    def isclose(self, other: EvenPolynomial, tol: float = DEFAULT_TOL) -> bool:
        scale: float = max(1.0, self.magnitude(), other.magnitude())
        return (self - other).magnitude() <= tol * scale

    def __repr__(self) -> str:
        return f"EvenPolynomial(degree={self.degree})"


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------


def poly_add(a: EvenPolynomial, b: EvenPolynomial) -> EvenPolynomial:
    return a + b


def poly_mul(a: EvenPolynomial, b: EvenPolynomial) -> EvenPolynomial:
    return a * b


def reverse_poly(c: EvenPolynomial) -> EvenPolynomial:
    return c.reverse()


def left_evaluate(c: EvenPolynomial, h: Coefficient) -> Multivector:
    """``sum h^i q_i`` with powers of ``h`` multiplied from the left."""
    hm: Multivector = _as_multivector(h)
    acc: Multivector = Multivector.zero()
    for coeff in reversed(c.coeffs):
        acc = coeff + hm * acc
    return acc


def right_evaluate(c: EvenPolynomial, h: Coefficient) -> Multivector:
    """``sum q_i h^i`` with powers of ``h`` multiplied from the right."""
    hm: Multivector = _as_multivector(h)
    acc: Multivector = Multivector.zero()
    for coeff in reversed(c.coeffs):
        acc = coeff + acc * hm
    return acc


def derivative(c: EvenPolynomial) -> EvenPolynomial:
    return EvenPolynomial(c.coeffs[k] * float(k) for k in range(1, len(c.coeffs)))


def shift(c: EvenPolynomial, z: complex) -> EvenPolynomial:
    """Taylor shift ``C(t + z)``."""
    n: int = len(c.coeffs)
    shifted: List[Multivector] = []
    for k in range(n):
        acc: Multivector = Multivector.zero()
        for i in range(k, n):
            acc = acc + c.coeffs[i] * (math.comb(i, k) * z ** (i - k))
        shifted.append(acc)
    return EvenPolynomial(shifted)


def scale(c: EvenPolynomial, factor: complex) -> EvenPolynomial:
    """Reparametrization ``C(factor * t)``."""
    return EvenPolynomial(q * factor**k for k, q in enumerate(c.coeffs))


def conjugate_by(c: EvenPolynomial, v: Multivector) -> EvenPolynomial:
    """``v C v^-1`` for an invertible ``v``."""
    v_inv: Multivector = v.inverse()
    return EvenPolynomial(v * q * v_inv for q in c.coeffs)


def interpolate_linear(
    z1: complex, n1: Multivector, z2: complex, n2: Multivector
) -> EvenPolynomial:
    """The linear polynomial ``R`` with ``R(z1) = n1`` and ``R(z2) = n2``."""
    if z1 == z2:
        raise ValueError("interpolation nodes must differ")
    r1: Multivector = (n1 - n2) / (z1 - z2)
    r0: Multivector = n1 - r1 * z1
    return EvenPolynomial([r0, r1])


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------


def _divide(
    c: EvenPolynomial, p: EvenPolynomial, divisor_on_right: bool
) -> Tuple[EvenPolynomial, EvenPolynomial]:
    if p.degree < 0:
        raise ZeroDivisionError("polynomial division by zero")
    try:
        lead_inv: Multivector = p.leading.inverse()
    except NotInvertible as exc:
        raise NonInvertibleLeadingCoefficient(
            "divisor has a non-invertible leading coefficient"
        ) from exc

    remainder: List[Multivector] = list(c.coeffs)
    quotient: List[Multivector] = [Multivector.zero()] * max(0, c.degree - p.degree + 1)
    for k in range(c.degree - p.degree, -1, -1):
        top: Multivector = remainder[k + p.degree]
        term: Multivector = top * lead_inv if divisor_on_right else lead_inv * top
        quotient[k] = term
        for j, pj in enumerate(p.coeffs):
            product: Multivector = term * pj if divisor_on_right else pj * term
            remainder[k + j] = remainder[k + j] - product
        remainder[k + p.degree] = Multivector.zero()
    return EvenPolynomial(quotient), EvenPolynomial(remainder[: max(p.degree, 0)])


def divide_left(c: EvenPolynomial, p: EvenPolynomial) -> Tuple[EvenPolynomial, EvenPolynomial]:
    """Division with remainder ``C = Q P + R`` and ``deg R < deg P``.

    For a real divisor ``P`` the remainder also satisfies
    ``left_evaluate(C, h) == left_evaluate(R, h)`` at every left zero ``h``
    of ``P``.

    Raises:
        NonInvertibleLeadingCoefficient: If ``P`` has a non-invertible leading
            coefficient.
    """
    return _divide(c, p, divisor_on_right=True)


def divide_right(c: EvenPolynomial, p: EvenPolynomial) -> Tuple[EvenPolynomial, EvenPolynomial]:
    """Division with remainder ``C = P Q + R``, the divisor on the left."""
    return _divide(c, p, divisor_on_right=False)


# ---------------------------------------------------------------------------
# Spinor polynomials
# ---------------------------------------------------------------------------


def norm_poly(c: EvenPolynomial, tol: float = DEFAULT_TOL) -> RealPolynomial:
    """Real norm polynomial ``C C~``, certified against ``C~ C``.

    Raises:
        NotSpinor: If ``C C~`` and ``C~ C`` differ, leave a non-scalar or
            imaginary residue, or vanish.
    """
    size: float = c.magnitude() ** 2
    if size == 0.0:
        raise NotSpinor("the zero polynomial is not a spinor polynomial")
    left: EvenPolynomial = c * c.reverse()
    right: EvenPolynomial = c.reverse() * c

    residue: float = (left - right).magnitude()
    scalars: List[complex] = [q.scalar_part for q in left.coeffs]
    for q, s in zip(left.coeffs, scalars):
        residue = max(residue, (q - Multivector.scalar(s)).norm(), abs(s.imag))
    if residue > tol * size:
        raise NotSpinor(f"spinor condition violated (residue {residue:.3e})")

    values: np.ndarray = np.array([s.real for s in scalars])
    if values.size:
        values[np.abs(values) <= tol * np.max(np.abs(values))] = 0.0
    norm: RealPolynomial = RealPolynomial(tuple(values))
    if norm.is_zero():
        raise NotSpinor("norm polynomial vanishes")
    return norm


@dataclass(frozen=True)
class SpinorPolynomial:
    """An even polynomial together with its certified real norm polynomial."""

    poly: EvenPolynomial
    norm: RealPolynomial

    @classmethod
    def from_poly(cls, poly: EvenPolynomial, tol: float = DEFAULT_TOL) -> SpinorPolynomial:
        return cls(poly, norm_poly(poly, tol))

    @property
    def degree(self) -> int:
        return self.poly.degree


def linear_spinor(h: Multivector) -> EvenPolynomial:
    """``t - h``; a spinor polynomial whenever ``(t - h)(t - h~)`` is real."""
    return EvenPolynomial.linear(h)


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSet:
    """Distinct roots with multiplicities, sorted by ``(re, im)``."""

    roots: Tuple[Tuple[complex, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def expanded(self) -> List[complex]:
        return [z for z, m in self.roots for _ in range(m)]

    def as_polynomial(self) -> RealPolynomial:
        return RealPolynomial.from_roots(self.expanded())


def _aberth(monic: np.ndarray) -> np.ndarray:
    """Simultaneous Aberth iteration on a monic polynomial (ascending coefficients)."""
    n: int = len(monic) - 1
    radius: float = 1.0 + float(np.max(np.abs(monic[:-1])))
    angles: np.ndarray = 2.0 * np.pi * np.arange(n) / n + _ANGLE_OFFSET
    z: np.ndarray = radius * np.exp(1j * angles)
    dmonic: np.ndarray = npoly.polyder(monic)
    abs_coeffs: np.ndarray = np.abs(monic)
    eps: float = float(np.finfo(float).eps)

    for iteration in range(MAX_ROOT_ITERATIONS):
        pz: np.ndarray = npoly.polyval(z, monic)
        bound: np.ndarray = 64.0 * eps * npoly.polyval(np.abs(z), abs_coeffs)
        if np.all(np.abs(pz) <= bound):
            logger.debug("Aberth converged after %d iteration(s)", iteration)
            return z
        dpz: np.ndarray = npoly.polyval(z, dmonic)
        dpz = np.where(dpz == 0, eps, dpz)
        ratio: np.ndarray = pz / dpz
        diffs: np.ndarray = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, np.inf)
        repulsion: np.ndarray = np.sum(1.0 / diffs, axis=1)
        z = z - ratio / (1.0 - ratio * repulsion)
    logger.debug("Aberth hit the iteration cap of %d", MAX_ROOT_ITERATIONS)
    return z


def _cluster_radius(multiplicity: int, z: complex) -> float:
    """Spread of Aberth approximations around a root of the given multiplicity."""
    return CLUSTER_SPREAD * CLUSTER_EPS ** (1.0 / multiplicity) * max(1.0, abs(z))


def _is_multiple_root(monic: np.ndarray, z: complex, multiplicity: int) -> bool:
    """``p, p', ..., p^(m-1)`` all vanish at ``z`` relative to their size."""
    deriv: np.ndarray = monic
    for order in range(multiplicity):
        if order:
            deriv = npoly.polyder(deriv)
        scale: float = float(npoly.polyval(abs(z), np.abs(deriv)))
        if abs(npoly.polyval(z, deriv)) > MULTIPLE_ROOT_TOL * max(scale, 1e-300):
            return False
    return True


def _cluster(monic: np.ndarray, values: np.ndarray) -> List[Tuple[complex, int]]:
    """Group Aberth approximations into roots with multiplicities.

    An ``m``-fold root scatters into ``m`` approximations at distance about
    ``eps^(1/m)``.  A group of size ``m`` is accepted when it fits the radius
    for its size and its centroid, polished as a root of ``p^(m-1)``, passes
    the derivative test.  Larger groups are tried first.
    """
    pending: List[complex] = sorted((complex(v) for v in values), key=lambda v: (v.real, v.imag))
    clusters: List[Tuple[complex, int]] = []
    while pending:
        z: complex = pending[0]
        nearest: List[complex] = sorted(pending, key=lambda v: abs(v - z))
        for size in range(len(nearest), 0, -1):
            members: List[complex] = nearest[:size]
            centre: complex = complex(np.mean(members))
            if size == 1:
                break
            centre = _polish(monic, centre, size)
            if max(abs(v - centre) for v in members) > _cluster_radius(size, centre):
                continue
            if _is_multiple_root(monic, centre, size):
                break
        clusters.append((centre, size))
        for v in members:
            pending.remove(v)
    return clusters


def _polish(monic: np.ndarray, z: complex, multiplicity: int) -> complex:
    """Newton steps on the ``(m-1)``-th derivative, where a root of order ``m`` is simple."""
    target: np.ndarray = npoly.polyder(monic, multiplicity - 1) if multiplicity > 1 else monic
    slope: np.ndarray = npoly.polyder(target)
    best: complex = z
    best_value: float = abs(npoly.polyval(z, target))
    for _ in range(8):
        d: complex = complex(npoly.polyval(best, slope))
        if d == 0:
            break
        candidate: complex = best - complex(npoly.polyval(best, target)) / d
        value: float = abs(npoly.polyval(candidate, target))
        if value >= best_value:
            break
        best, best_value = candidate, value
    return best


def _pair_conjugates(roots: List[Tuple[complex, int]]) -> List[Tuple[complex, int]]:
    reals: List[Tuple[complex, int]] = [(z, m) for z, m in roots if z.imag == 0.0]
    upper: List[Tuple[complex, int]] = [(z, m) for z, m in roots if z.imag > 0.0]
    lower: List[Tuple[complex, int]] = [(z, m) for z, m in roots if z.imag < 0.0]
    paired: List[Tuple[complex, int]] = list(reals)
    for z, m in upper:
        if not lower:
            raise NoConvergence(f"root {z} has no conjugate partner")
        idx: int = int(np.argmin([abs(w - z.conjugate()) for w, _ in lower]))
        partner, partner_m = lower.pop(idx)
        if m != partner_m:
            raise NoConvergence(
                f"conjugate roots {z} and {partner} have multiplicities {m} and {partner_m}"
            )
        centre: complex = 0.5 * (z + partner.conjugate())
        paired.extend([(centre, m), (centre.conjugate(), m)])
    if lower:
        raise NoConvergence("unpaired complex roots remain")
    return paired


def find_roots(p: RealPolynomial, tol: float = DEFAULT_ROOT_TOL) -> RootSet:
    """All complex roots of a real polynomial with multiplicities.

    Exact zero low-order coefficients give exact roots at zero.  The rest
    comes from an Aberth iteration seeded on a Cauchy-bound circle, followed
    by multiplicity-aware clustering, Newton polishing of each cluster,
    real snapping and conjugate pairing.

    Raises:
        ValueError: If ``deg p < 1``.
        NoConvergence: If a root fails the residual test.
    """
    if p.degree < 1:
        raise ValueError("find_roots needs a polynomial of degree >= 1")
    coeffs: np.ndarray = np.array(p.coeffs, dtype=float)
    zero_mult: int = int(np.argmax(coeffs != 0.0))
    work: np.ndarray = coeffs[zero_mult:] / coeffs[-1]

    roots: List[Tuple[complex, int]] = []
    if len(work) > 1:
        monic: np.ndarray = work.astype(complex)
        for z, m in _cluster(monic, _aberth(monic)):
            z = _polish(monic, z, m)
            if abs(z.imag) <= REAL_SNAP_TOL * max(1.0, abs(z)):
                z = complex(z.real, 0.0)
            elif (
                m > 1
                and abs(z.imag) <= _cluster_radius(m, z)
                and _is_multiple_root(monic, complex(z.real, 0.0), m)
            ):
                # multiple real roots polish slowly off the axis
                z = complex(z.real, 0.0)
            roots.append((z, m))
        roots = _pair_conjugates(roots)
    if zero_mult:
        roots.append((0j, zero_mult))

    magnitude: float = float(np.linalg.norm(coeffs / coeffs[-1]))
    for z, _ in roots:
        residual: float = abs(npoly.polyval(z, coeffs / coeffs[-1]))
        if residual > tol * magnitude * max(1.0, abs(z)) ** p.degree:
            raise NoConvergence(f"root {z} has residual {residual:.3e}")

    roots.sort(key=lambda item: (item[0].real, item[0].imag))
    return RootSet(tuple(roots))


# ---------------------------------------------------------------------------
# Quadratic factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticFactor:
    """Monic real quadratic ``(t - z1)(t - z2)`` with its root provenance.

    ``z1`` carries the non-negative imaginary part for a conjugate pair and
    the smaller value for a real pair.
    """

    z1: complex
    z2: complex
    available: int = field(default=1, compare=False)

    @property
    def polynomial(self) -> RealPolynomial:
        return RealPolynomial(
            ((self.z1 * self.z2).real, -(self.z1 + self.z2).real, 1.0)
        )

    @property
    def is_conjugate(self) -> bool:
        return self.z1.imag != 0.0

    @property
    def is_double(self) -> bool:
        return self.z1 == self.z2

    @property
    def label(self) -> str:
        return f"(t-({_fmt(self.z1)}))(t-({_fmt(self.z2)}))"

    def sort_key(self) -> Tuple[float, float, float, float]:
        return (self.z1.real, self.z1.imag, self.z2.real, self.z2.imag)


def _fmt(z: complex) -> str:
    if z.imag == 0.0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _real_pairings(values: List[float]) -> List[List[Tuple[float, float]]]:
    if not values:
        return [[]]
    first, rest = values[0], values[1:]
    results: List[List[Tuple[float, float]]] = []
    seen: set[float] = set()
    for idx, partner in enumerate(rest):
        if partner in seen:
            continue
        seen.add(partner)
        remaining: List[float] = rest[:idx] + rest[idx + 1 :]
        for tail in _real_pairings(remaining):
            results.append([(first, partner)] + tail)
    return results


def quadratic_pairings(
    norm: RealPolynomial, tol: float = DEFAULT_ROOT_TOL
) -> List[Tuple[QuadraticFactor, ...]]:
    """Every split of the root multiset into monic real quadratics.

    Conjugate roots always pair with each other.  A real root pairs with any
    other real root, and with its own value only when that value repeats.

    Raises:
        OddDegree: If the norm polynomial has odd degree.
    """
    if norm.degree % 2:
        raise OddDegree(f"norm polynomial has odd degree {norm.degree}")
    if norm.degree == 0:
        return [()]
    root_set: RootSet = find_roots(norm, tol)
    complex_part: List[QuadraticFactor] = []
    real_values: List[float] = []
    for z, m in root_set.roots:
        if z.imag > 0.0:
            complex_part.extend(QuadraticFactor(z, z.conjugate()) for _ in range(m))
        elif z.imag == 0.0:
            real_values.extend([z.real] * m)

    pairings: List[Tuple[QuadraticFactor, ...]] = []
    for real_pairs in _real_pairings(sorted(real_values)):
        factors: List[QuadraticFactor] = complex_part + [
            QuadraticFactor(complex(a), complex(b)) for a, b in real_pairs
        ]
        pairings.append(tuple(sorted(factors, key=QuadraticFactor.sort_key)))
    return pairings


def quadratic_factors(norm: RealPolynomial, tol: float = DEFAULT_ROOT_TOL) -> List[QuadraticFactor]:
    """Distinct monic real quadratic factors of ``norm``.

    ``available`` records how often a factor occurs in a single pairing.
    """
    counts: Dict[QuadraticFactor, int] = {}
    for pairing in quadratic_pairings(norm, tol):
        for factor in set(pairing):
            counts[factor] = max(counts.get(factor, 0), pairing.count(factor))
    return [
        QuadraticFactor(f.z1, f.z2, available=counts[f])
        for f in sorted(counts, key=QuadraticFactor.sort_key)
    ]


def quadratic_orderings(
    norm: RealPolynomial, tol: float = DEFAULT_ROOT_TOL
) -> List[Tuple[QuadraticFactor, ...]]:
    """Distinct ordered sequences of quadratic factors, in canonical order."""
    orderings: set[Tuple[QuadraticFactor, ...]] = set()
    for pairing in quadratic_pairings(norm, tol):
        orderings.update(itertools.permutations(pairing))
    return sorted(orderings, key=lambda seq: [f.sort_key() for f in seq])


def ordering_id(sequence: Sequence[QuadraticFactor]) -> str:
    return " ".join(f.label for f in sequence) if sequence else "()"


# ---------------------------------------------------------------------------
# Random spinor polynomials
# ---------------------------------------------------------------------------


def random_linear_spinor(rng: np.random.Generator) -> EvenPolynomial:
    """``t - h`` with ``h = s + e^f`` for a real scalar ``s`` and real vectors ``e, f``."""
    e, f = random_vector(rng), random_vector(rng)
    h: Multivector = float(rng.standard_normal()) + wedge(e, f)
    return EvenPolynomial.linear(h)


def random_spinor_polynomial(
    rng: np.random.Generator, degree: int, lead: Optional[Multivector] = None
) -> EvenPolynomial:
    """Product of random linear spinors times an invertible constant spinor.

    The constant defaults to the product of two random real vectors.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if lead is None:
        lead = random_vector(rng).to_multivector() * random_vector(rng).to_multivector()
    poly: EvenPolynomial = EvenPolynomial.constant(1.0)
    for _ in range(degree):
        poly = poly * random_linear_spinor(rng)
    return poly * lead


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
    """CLI entry-point: roots and quadratic orderings of a real polynomial."""
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        description="Roots and quadratic factor orderings of a real polynomial.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--roots", type=float, nargs="+", required=True, help="Coefficients, ascending degree"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    args: argparse.Namespace = parser.parse_args()
    _configure_logging(args.verbose)

    poly: RealPolynomial = RealPolynomial(tuple(args.roots))
    for z, m in find_roots(poly).roots:
        print(f"  root {_fmt(z)}  multiplicity {m}")
    if poly.degree % 2 == 0:
        for seq in quadratic_orderings(poly):
            print(f"  ordering {ordering_id(seq)}")


if __name__ == "__main__":
    main()
