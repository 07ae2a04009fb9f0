"""Tests for the Cl(4,1) arithmetic module (spinorfact.cga_core).

Covers the geometric product, reversion, grades, the four-quaternion
representation with its eps multiplication rules, Study and null
predicates, the sandwich action and the quaternion helpers.
"""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spinorfact.cga_core import (
    E1,
    E2,
    E3,
    E123,
    EINF,
    EM,
    EO,
    EP,
    EPS1,
    EPS2,
    EPS3,
    N_BLADES,
    ONE,
    QI,
    QJ,
    QK,
    CgaVector,
    FourQuat,
    Multivector,
    Quaternion,
    dot,
    from_even_slots,
    from_four_quat,
    from_null_basis,
    geometric_product,
    grade_part,
    is_null,
    is_study,
    qnorm,
    quat_left_matrix,
    quat_s,
    quaternion_of_vector,
    random_even,
    random_multivector,
    random_vector,
    rotation_matrix,
    rotor,
    sandwich,
    to_even_slots,
    to_four_quat,
    to_null_basis,
    up,
    vect,
    wedge,
)
from spinorfact.errors import NotAVersorAction, ZeroElement

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
blade_coeffs = arrays(np.float64, N_BLADES, elements=finite)

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def rng() -> np.random.Generator:
    """Seeded generator shared by the randomized checks."""
    return np.random.default_rng(2024)


@pytest.fixture()
def e0123inf() -> Multivector:
    """The product ``e_o e123 e_inf``."""
    return EO * E123 * EINF


# ---------------------------------------------------------------------------
# Geometric product
# ---------------------------------------------------------------------------


class TestGeometricProduct:
    """Tests for the geometric product and the metric."""

    def test_generator_product(self) -> None:
        """e1 e2 is the blade e12 and anticommutes."""
        assert (E1 * E2).isclose(Multivector.blade(0b00011))
        assert geometric_product(E2, E1).isclose(-Multivector.blade(0b00011))

    def test_metric(self) -> None:
        """e+ squares to 1 and e- to -1."""
        assert (EP * EP).isclose(ONE)
        assert (EM * EM).isclose(-ONE)
        assert (E3 * E3).isclose(ONE)

    def test_null_basis(self) -> None:
        """e_o and e_inf are null with e_o . e_inf = -1."""
        assert (EO * EO).is_zero()
        assert (EINF * EINF).is_zero()
        assert (EO * EINF + EINF * EO).isclose(-2.0 * ONE)

    @settings(max_examples=50, deadline=None)
    @given(a=blade_coeffs, b=blade_coeffs, c=blade_coeffs)
    def test_associative(self, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> None:
        """(ab)c equals a(bc)."""
        x, y, z = Multivector(a), Multivector(b), Multivector(c)
        assert ((x * y) * z).isclose(x * (y * z), tol=1e-10)

    def test_rejects_non_finite(self) -> None:
        """NaN coefficients are refused."""
        coeffs = np.zeros(N_BLADES)
        coeffs[3] = np.nan
        with pytest.raises(ValueError):
            Multivector(coeffs)


class TestReverseAndGrades:
    """Tests for ``reverse`` and ``grade``."""

    def test_bivector_sign(self) -> None:
        """Reversion flips a bivector."""
        e12 = E1 * E2
        assert e12.reverse().isclose(-e12)

    def test_eps1_is_self_reverse(self) -> None:
        """eps1 has grade four and is its own reverse."""
        assert EPS1.reverse().isclose(EPS1)

    def test_eps3_grades(self) -> None:
        """eps3 = e_inf e_o + 1 has scalar part 1 and bivector part e_inf ^ e_o."""
        assert grade_part(EPS3, 0).isclose(ONE)
        assert grade_part(EPS3, 2).isclose((EINF * EO - EO * EINF) * 0.5)

    def test_pseudoscalar_grade(self) -> None:
        """The pseudoscalar lives in grade five."""
        pseudo = E1 * E2 * E3 * EP * EM
        assert pseudo.grade(5).isclose(pseudo)
        assert pseudo.grade(3).is_zero()

    @settings(max_examples=30, deadline=None)
    @given(a=blade_coeffs, b=blade_coeffs)
    def test_anti_automorphism(self, a: np.ndarray, b: np.ndarray) -> None:
        """reverse(ab) equals reverse(b) reverse(a)."""
        x, y = Multivector(a), Multivector(b)
        assert (x * y).reverse().isclose(y.reverse() * x.reverse(), tol=1e-10)

    def test_grades_sum_to_whole(self, rng: np.random.Generator) -> None:
        """The grade projections reconstruct the element."""
        x = random_multivector(rng, complex_valued=True)
        total = Multivector.zero()
        for k in range(6):
            total = total + x.grade(k)
        assert total.isclose(x)


# ---------------------------------------------------------------------------
# Multiplication tables
# ---------------------------------------------------------------------------


class TestEpsilonTable:
    """The eps products and the quaternion units."""

    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (EPS1, EPS1, Multivector.zero()),
            (EPS1, EPS2, EPS3 - ONE),
            (EPS1, EPS3, EPS1),
            (EPS2, EPS1, -EPS3 - ONE),
            (EPS2, EPS2, Multivector.zero()),
            (EPS2, EPS3, -EPS2),
            (EPS3, EPS1, -EPS1),
            (EPS3, EPS2, EPS2),
            (EPS3, EPS3, ONE),
        ],
    )
    def test_eps_products(self, a: Multivector, b: Multivector, expected: Multivector) -> None:
        """Every eps product matches the multiplication rules."""
        assert (a * b).isclose(expected, tol=1e-12)

    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (QI, QI, -ONE),
            (QI, QJ, QK),
            (QI, QK, -QJ),
            (QJ, QI, -QK),
            (QJ, QJ, -ONE),
            (QJ, QK, QI),
            (QK, QI, QJ),
            (QK, QJ, -QI),
            (QK, QK, -ONE),
        ],
    )
    def test_hamilton_rules(self, a: Multivector, b: Multivector, expected: Multivector) -> None:
        """The embedded quaternion units obey Hamilton's rules."""
        assert (a * b).isclose(expected, tol=1e-12)

    @pytest.mark.parametrize("eps", [EPS1, EPS2, EPS3])
    @pytest.mark.parametrize("unit", [QI, QJ, QK])
    def test_eps_commute_with_units(self, eps: Multivector, unit: Multivector) -> None:
        """Quaternion units commute with eps1, eps2 and eps3."""
        assert (eps * unit).isclose(unit * eps, tol=1e-12)


class TestPointTable:
    """Products of e_o, e123 and e_inf with the eps elements."""

    def test_origin_row(self, e0123inf: Multivector) -> None:
        assert (EO * EPS1).isclose(e0123inf)
        assert (EO * EPS2).is_zero()
        assert (EO * EPS3).isclose(-EO)

    def test_e123_row(self, e0123inf: Multivector) -> None:
        assert (E123 * EPS1).isclose(-EINF)
        assert (E123 * EPS2).isclose(-EO)
        assert (E123 * EPS3).isclose(e0123inf - E123)

    def test_infinity_row(self, e0123inf: Multivector) -> None:
        assert (EINF * EPS1).is_zero()
        assert (EINF * EPS2).isclose(2.0 * E123 - e0123inf)
        assert (EINF * EPS3).isclose(EINF)


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


class TestRepresentations:
    """Even slots, null basis and four-quaternion form."""

    def test_one_is_first_quaternion(self) -> None:
        """1 maps to the quadruple (1, 0, 0, 0)."""
        f: FourQuat = to_four_quat(ONE)
        assert np.allclose(f.as_array(), np.eye(16)[0])

    def test_eps1_i(self) -> None:
        """eps1 i maps to (0, i, 0, 0)."""
        f: FourQuat = to_four_quat(EPS1 * QI)
        assert np.allclose(f.q1.as_array(), [0, 1, 0, 0])
        assert f.q0.is_zero() and f.q2.is_zero() and f.q3.is_zero()

    def test_four_quat_product_is_homomorphic(self, rng: np.random.Generator) -> None:
        """The four-quaternion product matches the geometric product."""
        for _ in range(100):
            g, h = random_even(rng), random_even(rng)
            lhs = to_four_quat(g * h).as_array()
            rhs = (to_four_quat(g) * to_four_quat(h)).as_array()
            assert np.allclose(lhs, rhs, atol=1e-12 * max(1.0, np.abs(lhs).max()))

    def test_four_quat_round_trip(self, rng: np.random.Generator) -> None:
        g = random_even(rng)
        assert from_four_quat(to_four_quat(g)).isclose(g)

    def test_four_quat_reverse(self, rng: np.random.Generator) -> None:
        """Reversing the quadruple agrees with reversing the element."""
        g = random_even(rng)
        expected: np.ndarray = to_four_quat(g).reverse().as_array()
        assert np.allclose(to_four_quat(g.reverse()).as_array(), expected)

    def test_even_slots_round_trip(self, rng: np.random.Generator) -> None:
        slots = rng.standard_normal(16)
        assert np.allclose(to_even_slots(from_even_slots(slots)), slots)

    def test_even_slots_reject_odd(self) -> None:
        """An odd element has no even-slot form."""
        with pytest.raises(ValueError):
            to_even_slots(E1)

    def test_null_basis_round_trip(self, rng: np.random.Generator) -> None:
        x = Multivector(rng.standard_normal(N_BLADES))
        assert np.allclose(from_null_basis(to_null_basis(x)).coeffs, x.coeffs, atol=1e-14)


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


class TestVectors:
    """Dot and wedge products of CGA vectors."""

    def test_dot_of_unit(self) -> None:
        e1 = CgaVector(a1=1.0)
        assert dot(e1, e1) == pytest.approx(1.0)

    def test_wedge_antisymmetric(self, rng: np.random.Generator) -> None:
        a = random_vector(rng)
        assert wedge(a, a).is_zero()

    def test_product_splits(self, rng: np.random.Generator) -> None:
        """ab = a.b + a^b for vectors."""
        a, b = random_vector(rng), random_vector(rng)
        assert (a.to_multivector() * b.to_multivector()).isclose(dot(a, b) * ONE + wedge(a, b))

    def test_square_is_scalar(self, rng: np.random.Generator) -> None:
        a = random_vector(rng)
        am = a.to_multivector()
        assert (am * am).isclose(dot(a, a) * ONE)

    def test_complex_wedge_identity(self, rng: np.random.Generator) -> None:
        """2 a^conj(a) = a conj(a) - conj(a) a = -4i (a_R ^ a_I)."""
        a = random_vector(rng, complex_valued=True)
        re = CgaVector.from_array(a.as_array().real)
        im = CgaVector.from_array(a.as_array().imag)
        lhs = 2.0 * wedge(a, a.conj())
        am, bm = a.to_multivector(), a.conj().to_multivector()
        assert lhs.isclose(am * bm - bm * am)
        assert lhs.isclose(-4j * wedge(re, im))

    def test_up_is_point(self) -> None:
        p = up([1.0, -2.0, 0.5])
        assert p.is_point()
        assert not p.is_plane()

    def test_from_multivector_rejects_bivector(self) -> None:
        with pytest.raises(ValueError):
            CgaVector.from_multivector(E1 * E2)


# ---------------------------------------------------------------------------
# Predicates and action
# ---------------------------------------------------------------------------


class TestPredicates:
    """Tests for ``is_study`` and ``is_null``."""

    def test_one(self) -> None:
        assert is_study(ONE)
        assert not is_null(ONE)

    def test_eps1(self) -> None:
        assert is_study(EPS1)
        assert is_null(EPS1)

    def test_one_plus_eps3(self) -> None:
        """(1 + eps3)(1 - eps3) vanishes, so 1 + eps3 is null."""
        q = ONE + EPS3
        assert is_study(q)
        assert is_null(q)

    def test_zero_raises(self) -> None:
        with pytest.raises(ZeroElement):
            is_study(Multivector.zero())
        with pytest.raises(ZeroElement):
            is_null(Multivector.zero())


class TestSandwich:
    """Tests for ``sandwich`` and rotors."""

    def test_identity(self, rng: np.random.Generator) -> None:
        x = random_vector(rng)
        assert np.allclose(sandwich(ONE, x).as_array(), x.as_array())

    def test_eps1_collapses_to_infinity(self, rng: np.random.Generator) -> None:
        """eps1 x eps1~ = 2 x_o e_inf."""
        x = random_vector(rng)
        image = sandwich(EPS1, x)
        assert np.allclose(image.as_array()[:4], 0.0, atol=1e-10)
        assert image.a_inf == pytest.approx(2.0 * x.a_o)

    @pytest.mark.parametrize("angle", [0.3, 1.2, np.pi / 2])
    def test_rotor_matches_rotation_matrix(self, angle: float) -> None:
        """The rotor about e12 rotates e1 towards e2."""
        matrix = rotation_matrix(rotor(E1 * E2, angle))
        expected = np.array(
            [[np.cos(angle), -np.sin(angle), 0.0], [np.sin(angle), np.cos(angle), 0.0], [0, 0, 1]]
        )
        assert np.allclose(matrix, expected, atol=1e-12)

    def test_rotor_needs_unit_bivector(self) -> None:
        with pytest.raises(ValueError):
            rotor(2.0 * E1 * E2, 0.1)

    def test_non_versor_raises(self, rng: np.random.Generator) -> None:
        """A generic even element leaves a non-vector residue."""
        with pytest.raises(NotAVersorAction):
            sandwich(random_even(rng), random_vector(rng))


# ---------------------------------------------------------------------------
# Quaternion helpers
# ---------------------------------------------------------------------------


class TestQuaternionHelpers:
    """Tests for ``quat_s``, ``vect`` and ``qnorm``."""

    def test_s_of_unit(self) -> None:
        i = Quaternion(0, 1, 0, 0)
        assert quat_s(i, i) == pytest.approx(2.0)

    def test_vect(self) -> None:
        assert vect(Quaternion(3, 2, 0, 0)) == Quaternion(0, 2, 0, 0)

    @pytest.mark.parametrize("bad", [np.nan, np.inf, complex(0.0, -np.inf)])
    def test_rejects_non_finite(self, bad: complex) -> None:
        with pytest.raises(ValueError):
            Quaternion(1, 0, bad, 0)
        with pytest.raises(ValueError):
            Quaternion.from_array([0, 0, 0, bad])

    def test_complex_null_identity(self, rng: np.random.Generator) -> None:
        """x conj(y) x = S(x, y) x when qnorm(x) = 0."""
        x = Quaternion(1, 1j, 0, 0)
        assert qnorm(x) == pytest.approx(0.0)
        for _ in range(10):
            y = Quaternion.from_array(rng.standard_normal(4) + 1j * rng.standard_normal(4))
            lhs = (x * y.conj() * x).as_array()
            rhs = (quat_s(x, y) * x).as_array()
            assert np.allclose(lhs, rhs)

    def test_embedding_respects_product(self, rng: np.random.Generator) -> None:
        a = Quaternion.from_array(rng.standard_normal(4))
        b = Quaternion.from_array(rng.standard_normal(4))
        assert (a * b).to_multivector().isclose(a.to_multivector() * b.to_multivector())

    def test_left_matrix_is_left_product(self, rng: np.random.Generator) -> None:
        q = Quaternion.from_array(rng.standard_normal(4))
        y = Quaternion.from_array(rng.standard_normal(4))
        assert np.allclose(quat_left_matrix(q) @ y.as_array(), (q * y).as_array())

    def test_quaternion_of_vector(self) -> None:
        """Only the Euclidean part of the vector survives."""
        v = CgaVector(a_o=2.0, a1=1.0, a2=-1.0, a3=0.5j, a_inf=3.0)
        assert quaternion_of_vector(v) == Quaternion(0, 1.0, -1.0, 0.5j)
