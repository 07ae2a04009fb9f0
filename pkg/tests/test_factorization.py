"""Tests for linear factors and full factorizations (spinorfact.factorization)."""
from __future__ import annotations

import numpy as np
import pytest

from spinorfact.cga_core import EPS1, EPS2, EPS3, ONE, QI, QJ, QK, Multivector
from spinorfact.errors import (
    NoCommonZero,
    NoFactor,
    NullEvaluationDegenerate,
    OrthogonalAnnihilators,
)
from spinorfact.factorization import (
    ACCEPT_TOL,
    FactorOptions,
    Factorization,
    LinearFactor,
    factorize_all,
    format_four_quat,
    left_factor_algebraic,
    left_factor_double_root,
    left_factor_geometric,
    perturbed_rotation_annihilators,
    perturbed_rotation_polynomial,
    right_factor_algebraic,
    right_factor_double_root,
    rulings_condition,
    verify,
)
from spinorfact.mult_technique import (
    cofactor_from_points,
    hyperbolic_rotation_polynomial,
    sphere_pair_points,
)
from spinorfact.spinor_poly import (
    EvenPolynomial,
    QuadraticFactor,
    RealPolynomial,
    divide_left,
    divide_right,
    left_evaluate,
    norm_poly,
    random_spinor_polynomial,
    right_evaluate,
    shift,
)

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(19)


@pytest.fixture()
def rotation() -> EvenPolynomial:
    """``t^2 + 1 + eps1 (t i + j)``, which splits as ``(t + k)(t - k + eps1 i)``."""
    return perturbed_rotation_polynomial(1.0, 1.0)


@pytest.fixture()
def double_root_product() -> EvenPolynomial:
    """``(t - 1 - eps1 i)(t - 1 - eps2 j)``; its norm is ``(t - 1)^4``."""
    first: EvenPolynomial = EvenPolynomial.linear(ONE + EPS1 * QI)
    second: EvenPolynomial = EvenPolynomial.linear(ONE + EPS2 * QJ)
    return first * second


def _assert_left_factor(c: EvenPolynomial, factor: LinearFactor, tol: float = 1e-8) -> None:
    assert left_evaluate(c, factor.h).norm() <= tol * max(1.0, c.magnitude())
    _, remainder = divide_right(c, factor.polynomial)
    assert remainder.magnitude() <= tol * max(1.0, c.magnitude())


def _assert_norm_matches(factor: LinearFactor) -> None:
    norm: RealPolynomial = norm_poly(factor.polynomial)
    assert norm.isclose(factor.M, 1e-8)


# ---------------------------------------------------------------------------
# Geometric method
# ---------------------------------------------------------------------------


class TestGeometricFactor:
    def test_explicit_annihilators_give_minus_k(self, rotation: EvenPolynomial) -> None:
        pair = perturbed_rotation_annihilators(1.0, 1.0, 0.0, 0.0)
        factor: LinearFactor = left_factor_geometric(rotation, 1j, -1j, annihilators=pair)
        assert factor.h.isclose(-QK, 1e-10)
        assert factor.method == "geometric"
        _assert_left_factor(rotation, factor)

    def test_mismatched_perturbation_is_orthogonal(self) -> None:
        with pytest.raises(OrthogonalAnnihilators):
            left_factor_geometric(perturbed_rotation_polynomial(2.0, 1.0), 1j, -1j)

    def test_equal_roots_are_rejected(self, rotation: EvenPolynomial) -> None:
        with pytest.raises(ValueError, match="distinct"):
            left_factor_geometric(rotation, 1.0, 1.0)

    def test_vanishing_value_is_degenerate(self) -> None:
        real: EvenPolynomial = EvenPolynomial([ONE, 0.0, ONE])
        with pytest.raises(NullEvaluationDegenerate):
            left_factor_geometric(real, 1j, -1j)

    def test_random_products(self, rng) -> None:
        for _ in range(5):
            c: EvenPolynomial = random_spinor_polynomial(rng, 2)
            report = factorize_all(c)
            first: LinearFactor = report.factorizations[0].factors[0]
            _assert_left_factor(c, first, tol=1e-6)
            _assert_norm_matches(first)


# ---------------------------------------------------------------------------
# Algebraic method
# ---------------------------------------------------------------------------


class TestAlgebraicFactor:
    def test_matches_geometric_on_random_input(self, rng) -> None:
        c: EvenPolynomial = random_spinor_polynomial(rng, 2)
        report = factorize_all(c)
        quad: QuadraticFactor = report.factorizations[0].factors[0].quadratic
        algebraic: LinearFactor = left_factor_algebraic(c, quad)
        assert algebraic.method == "algebraic"
        _assert_left_factor(c, algebraic, tol=1e-6)

    def test_right_factor(self, rng) -> None:
        c: EvenPolynomial = random_spinor_polynomial(rng, 2)
        quad: QuadraticFactor = factorize_all(c).factorizations[0].factors[0].quadratic
        factor: LinearFactor = right_factor_algebraic(c, quad)
        assert factor.side == "right"
        assert right_evaluate(c, factor.h).norm() <= 1e-6 * max(1.0, c.magnitude())
        _, remainder = divide_left(c, factor.polynomial)
        assert remainder.magnitude() <= 1e-6 * max(1.0, c.magnitude())

    def test_mismatched_perturbation_has_no_common_zero(self) -> None:
        with pytest.raises(NoCommonZero):
            left_factor_algebraic(
                perturbed_rotation_polynomial(2.0, 1.0), QuadraticFactor(1j, -1j)
            )

    def test_constant_remainder_has_no_common_zero(self) -> None:
        # t^2 + 1 + eps3 leaves the constant eps3 modulo t^2 + 1
        c: EvenPolynomial = EvenPolynomial([ONE + EPS3, 0.0, ONE])
        with pytest.raises(NoCommonZero):
            left_factor_algebraic(c, QuadraticFactor(1j, -1j))


class TestRulingsCondition:
    """``C(z1)~ C(z2)``: nonzero is sufficient, zero is inconclusive."""

    def test_vanishes_on_factorizable_rotation(self, rotation: EvenPolynomial) -> None:
        assert rulings_condition(rotation, 1j, -1j).is_zero(1e-10)
        assert factorize_all(rotation).status != "no_factorization"

    def test_vanishes_on_unfactorizable_rotation(self) -> None:
        c: EvenPolynomial = perturbed_rotation_polynomial(2.0, 1.0)
        assert rulings_condition(c, 1j, -1j).is_zero(1e-10)


# ---------------------------------------------------------------------------
# Double-root method
# ---------------------------------------------------------------------------


class TestDoubleRoot:
    def test_factor_exists(self, double_root_product: EvenPolynomial) -> None:
        factor: LinearFactor = left_factor_double_root(double_root_product, 1.0)
        assert factor.method == "double_root"
        assert factor.quadratic.is_double
        _assert_left_factor(double_root_product, factor)
        _assert_norm_matches(factor)

    def test_right_factor_exists(self, double_root_product: EvenPolynomial) -> None:
        factor: LinearFactor = right_factor_double_root(double_root_product, 1.0)
        assert factor.side == "right"
        assert right_evaluate(double_root_product, factor.h).norm() <= 1e-8

    def test_no_factor_without_linear_term(self) -> None:
        c: EvenPolynomial = EvenPolynomial([EPS1 * QJ, 0.0, ONE])
        with pytest.raises(NoFactor):
            left_factor_double_root(c, 0.0)

    def test_vanishing_value_is_degenerate(self) -> None:
        c: EvenPolynomial = EvenPolynomial([ONE, -2.0 * ONE, ONE])
        with pytest.raises(NullEvaluationDegenerate):
            left_factor_double_root(c, 1.0)

    def test_full_factorization(self, double_root_product: EvenPolynomial) -> None:
        report = factorize_all(double_root_product)
        assert report.status == "factored"
        assert verify(double_root_product, report.factorizations[0]) <= ACCEPT_TOL


# ---------------------------------------------------------------------------
# Full factorization
# ---------------------------------------------------------------------------


class TestFactorizeAll:
    def test_linear_input(self) -> None:
        c: EvenPolynomial = EvenPolynomial.linear(QK)
        report = factorize_all(c)
        assert report.status == "factored"
        (factor,) = report.factorizations[0].factors
        assert factor.h.isclose(QK, 1e-10)
        assert factor.method == "linear"

    def test_rotation_factors(self, rotation: EvenPolynomial) -> None:
        report = factorize_all(rotation)
        assert report.status != "no_factorization"
        for fact in report.factorizations:
            assert fact.residual <= ACCEPT_TOL
            assert verify(rotation, fact) <= ACCEPT_TOL

    def test_hyperbolic_rotation_has_no_factorization(self) -> None:
        report = factorize_all(hyperbolic_rotation_polynomial(), FactorOptions(all_orderings=True))
        assert report.status == "no_factorization"
        assert report.factorizations == ()
        assert report.diagnostics
        assert all(d.status == "failed" for d in report.diagnostics)

    def test_cofactor_product_factors(self) -> None:
        cofactor: EvenPolynomial = cofactor_from_points(*sphere_pair_points())
        product: EvenPolynomial = hyperbolic_rotation_polynomial() * cofactor
        report = factorize_all(product)
        assert report.status == "factored"
        fact: Factorization = report.factorizations[0]
        assert len(fact.factors) == 3
        assert verify(product, fact) <= ACCEPT_TOL

    @pytest.mark.parametrize("degree", [2, 3])
    def test_random_polynomials(self, rng, degree: int) -> None:
        for _ in range(3):
            c: EvenPolynomial = random_spinor_polynomial(rng, degree)
            report = factorize_all(c, FactorOptions(all_orderings=True))
            assert report.status == "factored"
            for fact in report.factorizations:
                assert len(fact.factors) == degree
                assert verify(c, fact) <= ACCEPT_TOL

    def test_orderings_give_distinct_results(self, rng) -> None:
        c: EvenPolynomial = random_spinor_polynomial(rng, 2)
        report = factorize_all(c, FactorOptions(all_orderings=True))
        ids = [fact.ordering_id for fact in report.factorizations]
        assert len(ids) == len(set(ids))
        assert len(report.diagnostics) >= len(report.factorizations)

    def test_stops_at_first_ordering(self, rng) -> None:
        c: EvenPolynomial = random_spinor_polynomial(rng, 3)
        report = factorize_all(c)
        assert len(report.factorizations) == 1

    def test_right_side(self, rng) -> None:
        c: EvenPolynomial = random_spinor_polynomial(rng, 2)
        report = factorize_all(c, FactorOptions(side="right"))
        assert report.status == "factored"
        fact: Factorization = report.factorizations[0]
        assert fact.side == "right"
        assert all(f.side == "right" for f in fact.factors)
        assert verify(c, fact) <= ACCEPT_TOL
        last: LinearFactor = fact.factors[-1]
        assert right_evaluate(c, last.h).norm() <= 1e-6 * c.magnitude()

    def test_verify_detects_wrong_lead(self, rng) -> None:
        c: EvenPolynomial = random_spinor_polynomial(rng, 2)
        fact: Factorization = factorize_all(c).factorizations[0]
        broken: Factorization = Factorization(
            fact.factors, 0.0, fact.ordering_id, fact.lead * 2.0, fact.side
        )
        assert verify(c, broken) > 0.1

    def test_verify_rejects_zero_polynomial(self) -> None:
        fact: Factorization = Factorization((), 0.0, "()")
        with pytest.raises(ValueError):
            verify(EvenPolynomial([]), fact)


class TestOptions:
    def test_bad_side(self) -> None:
        with pytest.raises(ValueError, match="side"):
            FactorOptions(side="middle")

    def test_bad_tol(self) -> None:
        with pytest.raises(ValueError):
            FactorOptions(tol=0.0)


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


class TestFormatFourQuat:
    def test_scalar(self) -> None:
        assert format_four_quat(ONE) == "1"

    def test_zero(self) -> None:
        assert format_four_quat(Multivector.zero()) == "0"

    def test_dual_part(self) -> None:
        assert format_four_quat(EPS1 * QI) == "eps1(1i)"

    def test_mixed(self) -> None:
        text: str = format_four_quat(QK + EPS3 * 2.0)
        assert text == "1k + eps3(2)"


# ---------------------------------------------------------------------------
# Worked product and structural properties
# ---------------------------------------------------------------------------


class TestWorkedProduct:
    """``t^2 + eps3`` has no factorization; its product with a linear cofactor does."""

    @pytest.mark.parametrize(
        "roots, constant",
        [((1j, -1j), EPS3 - ONE), ((-1.0, 1.0), EPS3 + ONE)],
    )
    def test_remainders_are_constant(self, roots, constant: Multivector) -> None:
        divisor: EvenPolynomial = EvenPolynomial.from_real(QuadraticFactor(*roots).polynomial)
        _, remainder = divide_left(hyperbolic_rotation_polynomial(), divisor)
        assert remainder.degree == 0
        assert remainder.coefficient(0).isclose(constant, 1e-12)

    def test_explicit_factors_verify(self) -> None:
        product: EvenPolynomial = hyperbolic_rotation_polynomial() * cofactor_from_points(
            *sphere_pair_points()
        )
        hs = [
            -QK - QI * EPS1 + QJ * EPS2 - EPS3,
            QK + (QI + 0.5 * QJ) * EPS1 - QJ * EPS2 + EPS3,
            -QK + (QI - 0.5 * QJ) * EPS1 - QJ * EPS2 - EPS3,
        ]
        factors = tuple(
            LinearFactor(h, QuadraticFactor(1j, -1j), "left", "geometric") for h in hs
        )
        assert verify(product, Factorization(factors, 0.0, "worked")) <= 1e-12


class TestGeometricStructure:
    """``(h - z1) C(z2) = 0``, ``(h - z2) C(z1) = 0`` and ``(t - h)(t - h~) = M``."""

    def test_random_quadratics(self, rng) -> None:
        checked: int = 0
        for _ in range(20):
            c: EvenPolynomial = random_spinor_polynomial(rng, 2)
            quad: QuadraticFactor = factorize_all(c).factorizations[0].factors[0].quadratic
            try:
                factor: LinearFactor = left_factor_geometric(c, quad.z1, quad.z2)
            except OrthogonalAnnihilators:
                continue
            n1: Multivector = c(quad.z1)
            n2: Multivector = c(quad.z2)
            assert ((factor.h - quad.z1) * n2).norm() <= 1e-9 * max(1.0, n2.norm()) * max(
                1.0, factor.h.norm()
            )
            assert ((factor.h - quad.z2) * n1).norm() <= 1e-9 * max(1.0, n1.norm()) * max(
                1.0, factor.h.norm()
            )
            _assert_norm_matches(factor)
            assert factor.h.imag_norm() <= 1e-12
            checked += 1
        assert checked >= 15


class TestTranslationProducts:
    """Products whose norm is ``t^4``: factor iff ``C'(0)~ C(0)`` is nonzero."""

    @staticmethod
    def _vectorial(rng: np.random.Generator) -> Multivector:
        x, y, z = rng.standard_normal(3)
        return x * QI + y * QJ + z * QK

    def test_factorizable_instances(self, rng) -> None:
        for _ in range(20):
            c: EvenPolynomial = EvenPolynomial.linear(EPS1 * self._vectorial(rng)) * (
                EvenPolynomial.linear(EPS2 * self._vectorial(rng))
            )
            assert norm_poly(c).isclose(RealPolynomial((0.0, 0.0, 0.0, 0.0, 1.0)), 1e-9)
            factor: LinearFactor = left_factor_double_root(c, 0.0)
            _assert_left_factor(c, factor, tol=1e-7)
            assert factorize_all(c).status == "factored"

    def test_refused_instances(self, rng) -> None:
        for _ in range(20):
            c: EvenPolynomial = EvenPolynomial([EPS1 * self._vectorial(rng), 0.0, ONE])
            with pytest.raises(NoFactor):
                left_factor_double_root(c, 0.0)
            assert factorize_all(c).status == "no_factorization"

    def test_shifted_factorizable_instances(self, rng) -> None:
        for _ in range(10):
            c: EvenPolynomial = EvenPolynomial.linear(EPS1 * self._vectorial(rng)) * (
                EvenPolynomial.linear(EPS2 * self._vectorial(rng))
            )
            # C(t - 1) moves the quadruple root of the norm to t = 1
            shifted: EvenPolynomial = shift(c, -1.0)
            expected = RealPolynomial((1.0, -4.0, 6.0, -4.0, 1.0))
            assert norm_poly(shifted).isclose(expected, 1e-9)
            factor: LinearFactor = left_factor_double_root(shifted, 1.0)
            _assert_left_factor(shifted, factor, tol=1e-7)
            assert factorize_all(shifted).status == "factored"

    def test_shifted_refused_instances(self, rng) -> None:
        for _ in range(10):
            c: EvenPolynomial = EvenPolynomial([EPS1 * self._vectorial(rng), 0.0, ONE])
            shifted: EvenPolynomial = shift(c, -1.0)
            with pytest.raises(NoFactor):
                left_factor_double_root(shifted, 1.0)
            assert factorize_all(shifted).status == "no_factorization"
