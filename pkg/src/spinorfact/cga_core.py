"""Conformal geometric algebra Cl(4,1) over the complex numbers.

The internal representation is the orthonormal basis ``{e1, e2, e3, e+, e-}``
with blades indexed by a 5-bit mask (bit ``i`` set when the blade contains the
``i``-th generator, ascending order positive).  The null basis
``e_o = (e- - e+)/2``, ``e_inf = e- + e+`` is an input/output view only.

Besides the 32-dimensional ``Multivector`` the module offers the views used
throughout the package: the 16-slot even element wire format, the
four-quaternion representation ``q0 + eps1 q1 + eps2 q2 + eps3 q3`` and the
grade-one ``CgaVector`` ``(a_o, a1, a2, a3, a_inf)``.

Usage:
    poetry run python -m spinorfact.cga_core
"""

from __future__ import annotations

import argparse
import logging
import numbers
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from spinorfact.errors import NotAVersorAction, NotInvertible, ZeroElement

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

N_GENERATORS: int = 5
N_BLADES: int = 1 << N_GENERATORS
N_EVEN_SLOTS: int = 16
METRIC: Tuple[int, ...] = (1, 1, 1, 1, -1)
GENERATOR_LABELS: Tuple[str, ...] = ("1", "2", "3", "+", "-")
DEFAULT_TOL: float = 1e-10

EVEN_SLOT_LABELS: Tuple[str, ...] = (
    "1",
    "e12",
    "e13",
    "e23",
    "e1o",
    "e2o",
    "e3o",
    "e1inf",
    "e2inf",
    "e3inf",
    "eoinf",
    "e123o",
    "e123inf",
    "e12oinf",
    "e13oinf",
    "e23oinf",
)

logger: logging.Logger = logging.getLogger(__name__)

Scalar = Union[complex, float, int]


# ---------------------------------------------------------------------------
# Blade tables
# ---------------------------------------------------------------------------


def _popcount(value: int) -> int:
    return bin(value).count("1")


def _blade_product_sign(a: int, b: int) -> int:
    """Sign of ``e_a * e_b`` from reordering parity and the metric."""
    swaps: int = 0
    for i in range(N_GENERATORS):
        if (a >> i) & 1:
            swaps += _popcount(b & ((1 << i) - 1))
    sign: int = -1 if swaps % 2 else 1
    common: int = a & b
    for i in range(N_GENERATORS):
        if (common >> i) & 1 and METRIC[i] < 0:
            sign = -sign
    return sign


def _build_product_tensor() -> np.ndarray:
    tensor: np.ndarray = np.zeros((N_BLADES, N_BLADES, N_BLADES))
    for a in range(N_BLADES):
        for b in range(N_BLADES):
            tensor[a, b, a ^ b] = _blade_product_sign(a, b)
    return tensor


_PRODUCT: np.ndarray = _build_product_tensor()
_GRADES: np.ndarray = np.array([_popcount(i) for i in range(N_BLADES)])
_REVERSE_SIGNS: np.ndarray = np.array(
    [(-1) ** (k * (k - 1) // 2) for k in _GRADES], dtype=float
)


def blade_label(index: int) -> str:
    """Human readable name of an orthonormal blade, e.g. ``e12+``."""
    if index == 0:
        return "1"
    return "e" + "".join(GENERATOR_LABELS[i] for i in range(N_GENERATORS) if (index >> i) & 1)


# ---------------------------------------------------------------------------
# Multivector
# ---------------------------------------------------------------------------


class Multivector:
    """Immutable element of Cl(4,1) with 32 complex coefficients.

    Args:
        coeffs: 32 coefficients in orthonormal bitmask order.

    Raises:
        ValueError: If the shape is wrong or a coefficient is not finite.
    """

    __slots__ = ("_coeffs",)
    __array_ufunc__ = None

    def __init__(self, coeffs: Sequence[Scalar] | np.ndarray) -> None:
        arr: np.ndarray = np.array(coeffs, dtype=complex).reshape(-1)
        if arr.shape != (N_BLADES,):
            raise ValueError(f"Multivector needs {N_BLADES} coefficients, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Multivector coefficients must be finite")
        arr.setflags(write=False)
        self._coeffs: np.ndarray = arr

    # --- constructors ---
    @classmethod
    def zero(cls) -> Multivector:
        return cls(np.zeros(N_BLADES))

    @classmethod
    def scalar(cls, value: Scalar) -> Multivector:
        arr: np.ndarray = np.zeros(N_BLADES, dtype=complex)
        arr[0] = value
        return cls(arr)

    @classmethod
    def blade(cls, index: int, value: Scalar = 1.0) -> Multivector:
        if not 0 <= index < N_BLADES:
            raise ValueError(f"Blade index {index} out of range")
        arr: np.ndarray = np.zeros(N_BLADES, dtype=complex)
        arr[index] = value
        return cls(arr)

    # --- accessors ---
    @property
    def coeffs(self) -> np.ndarray:
        """Read-only view of the 32 coefficients."""
        return self._coeffs

    @property
    def scalar_part(self) -> complex:
        return complex(self._coeffs[0])

    def norm(self) -> float:
        """Euclidean magnitude of the coefficient vector."""
        return float(np.linalg.norm(self._coeffs))

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return self.norm() <= tol

    def isclose(self, other: Multivector, tol: float = DEFAULT_TOL) -> bool:
        """Relative comparison scaled by the larger operand."""
        scale: float = max(1.0, self.norm(), other.norm())
        return (self - other).norm() <= tol * scale

    # --- arithmetic ---
    def __add__(self, other: object) -> Multivector:
        if isinstance(other, Multivector):
            return Multivector(self._coeffs + other._coeffs)
        if isinstance(other, numbers.Number):
            return self + Multivector.scalar(complex(other))  # type: ignore[arg-type]
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Multivector:
        return Multivector(-self._coeffs)

    def __sub__(self, other: object) -> Multivector:
        if isinstance(other, (Multivector, numbers.Number)):
            return self + (-other)  # type: ignore[operator]
        return NotImplemented

    def __rsub__(self, other: object) -> Multivector:
        if isinstance(other, numbers.Number):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other: object) -> Multivector:
        if isinstance(other, Multivector):
            return Multivector(self.left_matrix() @ other._coeffs)
        if isinstance(other, numbers.Number):
            return Multivector(self._coeffs * complex(other))  # type: ignore[arg-type]
        return NotImplemented

    def __rmul__(self, other: object) -> Multivector:
        if isinstance(other, numbers.Number):
            return Multivector(self._coeffs * complex(other))  # type: ignore[arg-type]
        return NotImplemented

    def __truediv__(self, other: object) -> Multivector:
        if isinstance(other, numbers.Number):
            if other == 0:
                raise ZeroDivisionError("division of a multivector by zero")
            return Multivector(self._coeffs / complex(other))  # type: ignore[arg-type]
        return NotImplemented

    def left_matrix(self) -> np.ndarray:
        """Matrix ``L`` with ``L @ y.coeffs == (self * y).coeffs``."""
        return np.tensordot(self._coeffs, _PRODUCT, axes=(0, 0)).T

    def right_matrix(self) -> np.ndarray:
        """Matrix ``R`` with ``R @ x.coeffs == (x * self).coeffs``."""
        return np.tensordot(self._coeffs, _PRODUCT, axes=(0, 1)).T

    # --- involutions and projections ---
    def reverse(self) -> Multivector:
        return Multivector(self._coeffs * _REVERSE_SIGNS)

    def grade(self, k: int) -> Multivector:
        if not 0 <= k <= N_GENERATORS:
            raise ValueError(f"grade must lie in 0..{N_GENERATORS}, got {k}")
        return Multivector(np.where(_GRADES == k, self._coeffs, 0.0))

    def even(self) -> Multivector:
        return Multivector(np.where(_GRADES % 2 == 0, self._coeffs, 0.0))

    def odd(self) -> Multivector:
        return Multivector(np.where(_GRADES % 2 == 1, self._coeffs, 0.0))

    def conj(self) -> Multivector:
        """Complex conjugation of every coefficient."""
        return Multivector(np.conj(self._coeffs))

    def real(self) -> Multivector:
        return Multivector(self._coeffs.real)

    def imag_norm(self) -> float:
        return float(np.linalg.norm(self._coeffs.imag))

    def inverse(self, tol: float = DEFAULT_TOL) -> Multivector:
        """Two-sided inverse.

        Raises:
            NotInvertible: When the left multiplication matrix is singular.
        """
        lmat: np.ndarray = self.left_matrix()
        singular: np.ndarray = np.linalg.svd(lmat, compute_uv=False)
        if singular[0] == 0.0 or singular[-1] <= tol * singular[0]:
            raise NotInvertible(f"element is not invertible (sigma_min={singular[-1]:.3e})")
        unit: np.ndarray = np.zeros(N_BLADES, dtype=complex)
        unit[0] = 1.0
        return Multivector(np.linalg.solve(lmat, unit))

    def __repr__(self) -> str:
        terms: List[str] = []
        for idx in np.flatnonzero(np.abs(self._coeffs) > 1e-14):
            value: complex = complex(self._coeffs[idx])
            shown: str = f"{value.real:.6g}" if value.imag == 0 else f"({value:.6g})"
            terms.append(f"{shown}*{blade_label(int(idx))}")
        return "Multivector(" + (" + ".join(terms) if terms else "0") + ")"


EvenElement = Multivector
"""An even-grade multivector; the odd part is zero within tolerance."""


# ---------------------------------------------------------------------------
# Named elements
# ---------------------------------------------------------------------------

ONE: Multivector = Multivector.scalar(1.0)
E1: Multivector = Multivector.blade(0b00001)
E2: Multivector = Multivector.blade(0b00010)
E3: Multivector = Multivector.blade(0b00100)
EP: Multivector = Multivector.blade(0b01000)
EM: Multivector = Multivector.blade(0b10000)
EO: Multivector = (EM - EP) * 0.5
EINF: Multivector = EM + EP
E123: Multivector = E1 * E2 * E3
EOINF: Multivector = (EO * EINF - EINF * EO) * 0.5

EPS1: Multivector = E123 * EINF
EPS2: Multivector = E123 * EO
EPS3: Multivector = EINF * EO + 1.0

QI: Multivector = -(E2 * E3)
QJ: Multivector = E1 * E3
QK: Multivector = -(E1 * E2)

_EUCLIDEAN: Tuple[Multivector, ...] = (E1, E2, E3)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def reverse(a: Multivector) -> Multivector:
    return a.reverse()


def grade_part(a: Multivector, k: int) -> Multivector:
    return a.grade(k)


# ---------------------------------------------------------------------------
# Null basis and the even wire format
# ---------------------------------------------------------------------------


def _null_blade(mask: int) -> Multivector:
    """Null-basis blade for a mask over ``(e1, e2, e3, e_o, e_inf)``."""
    blade: Multivector = ONE
    for i in range(3):
        if (mask >> i) & 1:
            blade = blade * _EUCLIDEAN[i]
    has_o: bool = bool(mask & 0b01000)
    has_inf: bool = bool(mask & 0b10000)
    if has_o and has_inf:
        blade = blade * EOINF
    elif has_o:
        blade = blade * EO
    elif has_inf:
        blade = blade * EINF
    return blade


_NULL_BASIS: np.ndarray = np.column_stack([_null_blade(m).coeffs for m in range(N_BLADES)])
_NULL_BASIS_INV: np.ndarray = np.linalg.inv(_NULL_BASIS)


def to_null_basis(a: Multivector) -> np.ndarray:
    """Coordinates of ``a`` over the null blades (mask over e1, e2, e3, e_o, e_inf)."""
    return _NULL_BASIS_INV @ a.coeffs


def from_null_basis(coords: Sequence[Scalar] | np.ndarray) -> Multivector:
    return Multivector(_NULL_BASIS @ np.asarray(coords, dtype=complex))


_SLOT_FACTORS: Tuple[Tuple[Multivector, ...], ...] = (
    (),
    (E1, E2),
    (E1, E3),
    (E2, E3),
    (E1, EO),
    (E2, EO),
    (E3, EO),
    (E1, EINF),
    (E2, EINF),
    (E3, EINF),
    (EOINF,),
    (E1, E2, E3, EO),
    (E1, E2, E3, EINF),
    (E1, E2, EOINF),
    (E1, E3, EOINF),
    (E2, E3, EOINF),
)


def _slot_blade(factors: Tuple[Multivector, ...]) -> Multivector:
    blade: Multivector = ONE
    for factor in factors:
        blade = blade * factor
    return blade


_EVEN_SLOTS: np.ndarray = np.column_stack([_slot_blade(f).coeffs for f in _SLOT_FACTORS])
_EVEN_SLOTS_PINV: np.ndarray = np.linalg.pinv(_EVEN_SLOTS)


def to_even_slots(q: Multivector, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The 16 null-basis coordinates of an even element.

    Raises:
        ValueError: If ``q`` has an odd part above ``tol`` relative to its size.
    """
    if q.odd().norm() > tol * max(1.0, q.norm()):
        raise ValueError("element has a non-vanishing odd-grade part")
    return _EVEN_SLOTS_PINV @ q.coeffs


def from_even_slots(slots: Sequence[Scalar] | np.ndarray) -> Multivector:
    arr: np.ndarray = np.asarray(slots, dtype=complex).reshape(-1)
    if arr.shape != (N_EVEN_SLOTS,):
        raise ValueError(f"even element needs {N_EVEN_SLOTS} slots, got {arr.size}")
    return Multivector(_EVEN_SLOTS @ arr)


# ---------------------------------------------------------------------------
# Quaternions
# ---------------------------------------------------------------------------


def _hamilton(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class Quaternion:
    """Complex quaternion ``w + x i + y j + z k`` with Hamilton rules."""

    w: complex = 0j
    x: complex = 0j
    y: complex = 0j
    z: complex = 0j

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("Quaternion components must be finite")

    @classmethod
    def from_array(cls, arr: Sequence[Scalar] | np.ndarray) -> Quaternion:
        w, x, y, z = (complex(v) for v in np.asarray(arr, dtype=complex).reshape(4))
        return cls(w, x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=complex)

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> Quaternion:
        return Quaternion.from_array(-self.as_array())

    def __mul__(self, other: object) -> Quaternion:
        if isinstance(other, Quaternion):
            return Quaternion.from_array(_hamilton(self.as_array(), other.as_array()))
        if isinstance(other, numbers.Number):
            return Quaternion.from_array(self.as_array() * complex(other))  # type: ignore[arg-type]
        return NotImplemented

    def __rmul__(self, other: object) -> Quaternion:
        if isinstance(other, numbers.Number):
            return Quaternion.from_array(self.as_array() * complex(other))  # type: ignore[arg-type]
        return NotImplemented

    def conj(self) -> Quaternion:
        """Quaternion conjugate, the reverse under the embedding."""
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def complex_conj(self) -> Quaternion:
        return Quaternion.from_array(np.conj(self.as_array()))

    def magnitude(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return self.magnitude() <= tol

    def to_multivector(self) -> Multivector:
        return self.w * ONE + self.x * QI + self.y * QJ + self.z * QK


def quat_left_matrix(q: Quaternion) -> np.ndarray:
    """4x4 matrix of ``y -> q y``."""
    return np.column_stack([_hamilton(q.as_array(), unit) for unit in np.eye(4)])


def quat_right_matrix(q: Quaternion) -> np.ndarray:
    """4x4 matrix of ``y -> y q``."""
    return np.column_stack([_hamilton(unit, q.as_array()) for unit in np.eye(4)])


def quat_s(x: Quaternion, y: Quaternion) -> complex:
    """Symmetric form ``S(x, y) = x conj(y) + y conj(x)``, a scalar."""
    return complex(2.0 * np.sum(x.as_array() * y.as_array()))


def vect(x: Quaternion) -> Quaternion:
    return Quaternion(0j, x.x, x.y, x.z)


def qnorm(x: Quaternion) -> complex:
    """``x conj(x)``; bilinear, so complex-null quaternions have qnorm 0."""
    return complex(np.sum(x.as_array() ** 2))


# ---------------------------------------------------------------------------
# Four-quaternion representation
# ---------------------------------------------------------------------------

_EPSILONS: Tuple[Multivector, ...] = (ONE, EPS1, EPS2, EPS3)
_UNITS: Tuple[Multivector, ...] = (ONE, QI, QJ, QK)
_FOUR_QUAT: np.ndarray = np.column_stack(
    [(eps * unit).coeffs for eps in _EPSILONS for unit in _UNITS]
)
_FOUR_QUAT_PINV: np.ndarray = np.linalg.pinv(_FOUR_QUAT)


@dataclass(frozen=True)
class FourQuat:
    """The quadruple ``(q0, q1, q2, q3)`` of ``q0 + eps1 q1 + eps2 q2 + eps3 q3``."""

    q0: Quaternion
    q1: Quaternion
    q2: Quaternion
    q3: Quaternion

    def as_array(self) -> np.ndarray:
        return np.concatenate([q.as_array() for q in (self.q0, self.q1, self.q2, self.q3)])

    @classmethod
    def from_array(cls, arr: Sequence[Scalar] | np.ndarray) -> FourQuat:
        flat: np.ndarray = np.asarray(arr, dtype=complex).reshape(4, 4)
        return cls(*(Quaternion.from_array(row) for row in flat))

    def __add__(self, other: FourQuat) -> FourQuat:
        return FourQuat.from_array(self.as_array() + other.as_array())

    def __mul__(self, other: FourQuat) -> FourQuat:
        """Product through the eps multiplication table."""
        a0, a1, a2, a3 = self.q0, self.q1, self.q2, self.q3
        b0, b1, b2, b3 = other.q0, other.q1, other.q2, other.q3
        return FourQuat(
            a0 * b0 - a1 * b2 - a2 * b1 + a3 * b3,
            a0 * b1 + a1 * b0 + a1 * b3 - a3 * b1,
            a0 * b2 + a2 * b0 - a2 * b3 + a3 * b2,
            a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        )

    def reverse(self) -> FourQuat:
        return FourQuat(self.q0.conj(), self.q1.conj(), self.q2.conj(), -self.q3.conj())


def to_four_quat(q: Multivector) -> FourQuat:
    if q.odd().norm() > DEFAULT_TOL * max(1.0, q.norm()):
        raise ValueError("four-quaternion form needs an even element")
    return FourQuat.from_array(_FOUR_QUAT_PINV @ q.coeffs)


def from_four_quat(f: FourQuat) -> Multivector:
    return Multivector(_FOUR_QUAT @ f.as_array())


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CgaVector:
    """Grade-one element ``a_o e_o + a1 e1 + a2 e2 + a3 e3 + a_inf e_inf``.

    Represents a sphere, a plane (``a_o = 0``) or a point (null vector).
    """

    a_o: complex = 0j
    a1: complex = 0j
    a2: complex = 0j
    a3: complex = 0j
    a_inf: complex = 0j

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("CgaVector coordinates must be finite")

    @classmethod
    def from_array(cls, arr: Sequence[Scalar] | np.ndarray) -> CgaVector:
        flat: np.ndarray = np.asarray(arr, dtype=complex).reshape(-1)
        if flat.shape != (5,):
            raise ValueError(f"CgaVector needs 5 coordinates, got {flat.size}")
        return cls(*(complex(v) for v in flat))

    def as_array(self) -> np.ndarray:
        return np.array([self.a_o, self.a1, self.a2, self.a3, self.a_inf], dtype=complex)

    def to_multivector(self) -> Multivector:
        return self.a_o * EO + self.a1 * E1 + self.a2 * E2 + self.a3 * E3 + self.a_inf * EINF

    @classmethod
    def from_multivector(cls, mv: Multivector, tol: float = DEFAULT_TOL) -> CgaVector:
        """Read the null-basis coordinates of a grade-one multivector.

        Raises:
            ValueError: If ``mv`` carries parts of other grades.
        """
        if (mv - mv.grade(1)).norm() > tol * max(1.0, mv.norm()):
            raise ValueError("multivector is not a vector")
        c: np.ndarray = mv.coeffs
        plus, minus = c[0b01000], c[0b10000]
        return cls(minus - plus, c[0b00001], c[0b00010], c[0b00100], (minus + plus) / 2.0)

    def __add__(self, other: CgaVector) -> CgaVector:
        return CgaVector.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: CgaVector) -> CgaVector:
        return CgaVector.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> CgaVector:
        return CgaVector.from_array(-self.as_array())

    def __mul__(self, other: object) -> CgaVector:
        if isinstance(other, numbers.Number):
            return CgaVector.from_array(self.as_array() * complex(other))  # type: ignore[arg-type]
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> CgaVector:
        return CgaVector.from_array(np.conj(self.as_array()))

    def magnitude(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def euclidean(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3], dtype=complex)

    def is_point(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(dot(self, self)) <= tol * self.magnitude() ** 2

    def is_plane(self, tol: float = DEFAULT_TOL) -> bool:
        # a . e_inf = -a_o
        return abs(self.a_o) <= tol * self.magnitude()


def dot(a: CgaVector, b: CgaVector) -> complex:
    """Symmetric inner product; ``e_o . e_inf = -1``."""
    return (
        a.a1 * b.a1 + a.a2 * b.a2 + a.a3 * b.a3 - a.a_o * b.a_inf - a.a_inf * b.a_o
    )


def wedge(a: CgaVector, b: CgaVector) -> Multivector:
    am: Multivector = a.to_multivector()
    bm: Multivector = b.to_multivector()
    return (am * bm - bm * am) * 0.5


def vector_from_quaternion(x_o: Scalar, X: Quaternion, x_inf: Scalar) -> CgaVector:  # noqa: N803
    """The vector ``x_o e_o + X e123 + x_inf e_inf`` for a vectorial quaternion ``X``."""
    return CgaVector(complex(x_o), X.x, X.y, X.z, complex(x_inf))


def quaternion_of_vector(v: CgaVector) -> Quaternion:
    """Vectorial quaternion ``X`` with ``X e123`` the Euclidean part of ``v``."""
    return Quaternion(0j, v.a1, v.a2, v.a3)


E_O: CgaVector = CgaVector(a_o=1.0)
E_INF: CgaVector = CgaVector(a_inf=1.0)


def up(x: Sequence[float] | np.ndarray) -> CgaVector:
    """Conformal point ``e_o + x + |x|^2/2 e_inf`` of a Euclidean point."""
    p: np.ndarray = np.asarray(x, dtype=complex).reshape(3)
    return CgaVector(1.0, p[0], p[1], p[2], 0.5 * np.sum(p * p))


def plane(normal: Sequence[float] | np.ndarray, distance: float) -> CgaVector:
    """Plane ``n + d e_inf`` with unit normal ``n`` at signed distance ``d``."""
    n: np.ndarray = np.asarray(normal, dtype=complex).reshape(3)
    return CgaVector(0.0, n[0], n[1], n[2], distance)


# ---------------------------------------------------------------------------
# Spinor predicates and action
# ---------------------------------------------------------------------------


def is_study(q: Multivector, tol: float = DEFAULT_TOL) -> bool:
    """``q q~ = q~ q`` with no part outside grade zero.

    Raises:
        ZeroElement: If ``q`` vanishes.
    """
    magnitude: float = q.norm()
    if magnitude == 0.0:
        raise ZeroElement("is_study needs a nonzero element")
    left: Multivector = q * q.reverse()
    right: Multivector = q.reverse() * q
    bound: float = tol * magnitude**2
    off_scalar: float = (left - Multivector.scalar(left.scalar_part)).norm()
    return (left - right).norm() <= bound and off_scalar <= bound


def is_null(q: Multivector, tol: float = DEFAULT_TOL) -> bool:
    magnitude: float = q.norm()
    if magnitude == 0.0:
        raise ZeroElement("is_null needs a nonzero element")
    return abs((q * q.reverse()).scalar_part) <= tol * magnitude**2


def sandwich(q: Multivector, x: CgaVector, tol: float = DEFAULT_TOL) -> CgaVector:
    """Grade-one part of ``q x q~``.

    Raises:
        NotAVersorAction: If the product leaves a residue outside grade one.
    """
    image: Multivector = q * x.to_multivector() * q.reverse()
    vector_part: Multivector = image.grade(1)
    residue: float = (image - vector_part).norm()
    if residue > tol * max(1.0, q.norm() ** 2 * x.magnitude()):
        raise NotAVersorAction(f"sandwich left a residue of {residue:.3e} outside grade one")
    return CgaVector.from_multivector(vector_part, tol=1.0)


# ---------------------------------------------------------------------------
# Rotors
# ---------------------------------------------------------------------------


def rotor(bivector: Multivector, angle: float) -> Multivector:
    """``exp(-angle/2 B)`` for a Euclidean unit bivector ``B`` with ``B^2 = -1``.

    ``rotor(e12, t)`` turns ``e1`` towards ``e2`` by ``t``.
    """
    square: Multivector = bivector * bivector
    if not square.isclose(Multivector.scalar(-1.0), tol=1e-9):
        raise ValueError("rotor needs a unit bivector with square -1")
    return np.cos(angle / 2.0) * ONE - np.sin(angle / 2.0) * bivector


def rotation_matrix(rot: Multivector) -> np.ndarray:
    """3x3 matrix whose columns are the images of e1, e2, e3."""
    columns: List[np.ndarray] = []
    for axis in range(3):
        unit: np.ndarray = np.zeros(5, dtype=complex)
        unit[axis + 1] = 1.0
        image: CgaVector = sandwich(rot, CgaVector.from_array(unit), tol=1e-9)
        columns.append(image.euclidean().real)
    return np.column_stack(columns)


# ---------------------------------------------------------------------------
# Random elements
# ---------------------------------------------------------------------------


def random_vector(rng: np.random.Generator, complex_valued: bool = False) -> CgaVector:
    coords: np.ndarray = rng.standard_normal(5).astype(complex)
    if complex_valued:
        coords = coords + 1j * rng.standard_normal(5)
    return CgaVector.from_array(coords)


def random_even(rng: np.random.Generator) -> Multivector:
    return from_even_slots(rng.standard_normal(N_EVEN_SLOTS))


def random_multivector(rng: np.random.Generator, complex_valued: bool = False) -> Multivector:
    coeffs: np.ndarray = rng.standard_normal(N_BLADES).astype(complex)
    if complex_valued:
        coeffs = coeffs + 1j * rng.standard_normal(N_BLADES)
    return Multivector(coeffs)


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
    """CLI entry-point: print the eps multiplication table."""
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        description="Print the four-quaternion eps multiplication table of Cl(4,1).",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    args: argparse.Namespace = parser.parse_args()
    _configure_logging(args.verbose)

    names: Tuple[str, ...] = ("eps1", "eps2", "eps3")
    epsilons: Tuple[Multivector, ...] = (EPS1, EPS2, EPS3)
    sep: str = "=" * 55
    print(f"\n{sep}\n  eps multiplication table\n{sep}")
    for name_a, a in zip(names, epsilons):
        for name_b, b in zip(names, epsilons):
            product: FourQuat = to_four_quat(a * b)
            print(f"  {name_a} * {name_b} = {np.round(product.as_array().real, 12)}")
    print(f"\n{sep}\n")


if __name__ == "__main__":
    main()
