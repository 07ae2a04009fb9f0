"""Tests for the multiplication technique (spinorfact.mult_technique)."""
from __future__ import annotations

import numpy as np
import pytest

from spinorfact.cga_core import EPS1, EPS2, EPS3, ONE, QI, QJ, QK, CgaVector, dot, up
from spinorfact.errors import DegenerateData, ExhaustedAttempts
from spinorfact.factorization import ACCEPT_TOL, verify
from spinorfact.mult_technique import (
    BRANCHES,
    AnnihilatorCertificate,
    CofactorResult,
    RealCofactorResult,
    annihilator_certificate,
    cofactor_from_points,
    cofactor_roots,
    find_cofactor,
    hyperbolic_rotation_polynomial,
    real_cofactor,
    sphere_pair_points,
)
from spinorfact.spinor_poly import (
    EvenPolynomial,
    RealPolynomial,
    left_evaluate,
    norm_poly,
    random_spinor_polynomial,
    right_evaluate,
)

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(23)


@pytest.fixture()
def hyperbolic() -> EvenPolynomial:
    return hyperbolic_rotation_polynomial()


def _assert_annihilates(product: EvenPolynomial, cert: AnnihilatorCertificate) -> None:
    for z, a in zip(cert.left_roots, cert.left_pair):
        value = product(z)
        bound: float = 1e-7 * a.magnitude() * max(1.0, value.norm())
        assert (a.to_multivector() * value).norm() <= bound
    for z, b in zip(cert.right_roots, cert.right_pair):
        value = product(z)
        bound = 1e-7 * b.magnitude() * max(1.0, value.norm())
        assert (value * b.to_multivector()).norm() <= bound


# ---------------------------------------------------------------------------
# Cofactor construction
# ---------------------------------------------------------------------------


class TestCofactorFromPoints:
    def test_sphere_pair(self) -> None:
        """``e1 + e_o`` and ``e2 + e_inf`` give ``t + k - i eps1 + j eps2 + eps3``."""
        cofactor: EvenPolynomial = cofactor_from_points(*sphere_pair_points())
        expected = QK - QI * EPS1 + QJ * EPS2 + EPS3
        assert cofactor.degree == 1
        assert cofactor.coefficient(0).isclose(expected, 1e-12)

    def test_norm_of_points(self, rng) -> None:
        e: CgaVector = up(rng.uniform(-1.0, 1.0, 3))
        f: CgaVector = up(rng.uniform(-1.0, 1.0, 3))
        ef: float = float(np.real(dot(e, f)))
        norm: RealPolynomial = norm_poly(cofactor_from_points(e, f))
        assert norm.isclose(RealPolynomial((-ef * ef, 0.0, 1.0)), 1e-10)

    def test_norm_of_general_vectors(self, rng) -> None:
        e: CgaVector = CgaVector.from_array(rng.uniform(-1.0, 1.0, 5))
        f: CgaVector = CgaVector.from_array(rng.uniform(-1.0, 1.0, 5))
        ef: float = float(np.real(dot(e, f)))
        ee: float = float(np.real(dot(e, e)))
        ff: float = float(np.real(dot(f, f)))
        norm: RealPolynomial = norm_poly(cofactor_from_points(e, f))
        assert norm.isclose(RealPolynomial((ee * ff - ef * ef, 0.0, 1.0)), 1e-10)

    def test_sphere_pair_norm_is_a_double_root(self) -> None:
        # e.e = f.f = 1 and e.f = -1
        norm: RealPolynomial = norm_poly(cofactor_from_points(*sphere_pair_points()))
        assert norm.isclose(RealPolynomial((0.0, 0.0, 1.0)), 1e-12)
        assert cofactor_roots(cofactor_from_points(*sphere_pair_points()))[0][1] == 2

    def test_orthogonal_points_rejected(self) -> None:
        with pytest.raises(ValueError, match="orthogonal"):
            cofactor_from_points(CgaVector(a1=1.0), CgaVector(a2=1.0))


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


class TestAnnihilatorCertificate:
    def test_two_root_branch(self, rng) -> None:
        p: EvenPolynomial = random_spinor_polynomial(rng, 1)
        e: CgaVector = up(rng.uniform(-1.0, 1.0, 3))
        f: CgaVector = up(rng.uniform(-1.0, 1.0, 3))
        cert: AnnihilatorCertificate = annihilator_certificate(p, e, f)
        assert cert.branch in BRANCHES
        assert cert.branch == "two_root"
        assert cert.min_overlap() > 0.0

    def test_left_pair_annihilates_product(self, rng) -> None:
        p: EvenPolynomial = random_spinor_polynomial(rng, 1)
        e: CgaVector = up(rng.uniform(-1.0, 1.0, 3))
        f: CgaVector = up(rng.uniform(-1.0, 1.0, 3))
        product: EvenPolynomial = p * cofactor_from_points(e, f)
        cert: AnnihilatorCertificate = annihilator_certificate(p, e, f)
        for z, a in zip(cert.left_roots, cert.left_pair):
            value = product(z)
            residual: float = (a.to_multivector() * value).norm()
            assert residual <= 1e-8 * a.magnitude() * max(1.0, value.norm())

    def test_general_vectors(self, rng) -> None:
        p: EvenPolynomial = random_spinor_polynomial(rng, 1)
        e: CgaVector = CgaVector.from_array(rng.uniform(-1.0, 1.0, 5))
        f: CgaVector = CgaVector.from_array(rng.uniform(-1.0, 1.0, 5))
        product: EvenPolynomial = p * cofactor_from_points(e, f)
        cert: AnnihilatorCertificate = annihilator_certificate(p, e, f)
        assert cert.branch == "two_root"
        _assert_annihilates(product, cert)

    def test_double_root_cofactor_has_no_certificate(self, hyperbolic: EvenPolynomial) -> None:
        with pytest.raises(DegenerateData, match="double root"):
            annihilator_certificate(hyperbolic, *sphere_pair_points())

    def test_single_root_branch(self) -> None:
        # two translations with the same parameter: norm (t - 1)^4
        p: EvenPolynomial = EvenPolynomial.linear(ONE + EPS1 * QI) * EvenPolynomial.linear(
            ONE + EPS2 * QJ
        )
        assert norm_poly(p).isclose(RealPolynomial((1.0, -4.0, 6.0, -4.0, 1.0)), 1e-12)
        e: CgaVector = up([0.2, -0.4, 0.5])
        f: CgaVector = up([-0.3, 0.1, 0.6])
        cert: AnnihilatorCertificate = annihilator_certificate(p, e, f)
        assert cert.branch == "single_root"
        assert cert.left_roots[1] == pytest.approx(1.0, abs=1e-6)
        assert cert.right_roots[0] == pytest.approx(1.0, abs=1e-6)
        _assert_annihilates(p * cofactor_from_points(e, f), cert)


# ---------------------------------------------------------------------------
# Cofactor search
# ---------------------------------------------------------------------------


class TestFindCofactor:
    def test_random_quadratic(self, rng) -> None:
        p: EvenPolynomial = random_spinor_polynomial(rng, 2)
        result: CofactorResult = find_cofactor(p, seed=3)
        assert result.attempts >= 1
        product: EvenPolynomial = p * result.H
        if result.product_factorization is not None:
            assert verify(product, result.product_factorization) <= ACCEPT_TOL
        else:
            assert result.left_factor is not None and result.right_factor is not None
            assert left_evaluate(product, result.left_factor.h).norm() <= 1e-6
            assert right_evaluate(product, result.right_factor.h).norm() <= 1e-6

    def test_hyperbolic_rotation(self, hyperbolic: EvenPolynomial) -> None:
        result: CofactorResult = find_cofactor(hyperbolic, seed=0)
        assert result.H.isclose(cofactor_from_points(result.e, result.f))
        assert result.product_factorization is not None or result.left_factor is not None

    def test_same_seed_same_cofactor(self, hyperbolic: EvenPolynomial) -> None:
        first: CofactorResult = find_cofactor(hyperbolic, seed=5)
        second: CofactorResult = find_cofactor(hyperbolic, seed=5)
        assert first.H.isclose(second.H)
        assert first.attempts == second.attempts

    def test_constant_rejected(self) -> None:
        with pytest.raises(ValueError):
            find_cofactor(EvenPolynomial.constant(1.0))

    def test_sphere_pair_points(self, hyperbolic: EvenPolynomial) -> None:
        """``e1 + e_o`` and ``e2 + e_inf`` make ``t^2 + eps3`` factor."""
        e, f = sphere_pair_points()
        result: CofactorResult = find_cofactor(hyperbolic, e=e, f=f)
        assert result.attempts == 1
        assert result.H.coefficient(0).isclose(QK - QI * EPS1 + QJ * EPS2 + EPS3, 1e-12)
        # H H~ = t^2 has a double root, so only the direct factorization applies
        assert result.certificate is None
        assert result.product_factorization is not None
        assert len(result.product_factorization.factors) == 3
        assert verify(hyperbolic * result.H, result.product_factorization) <= ACCEPT_TOL

    def test_colliding_roots_exhaust(self, hyperbolic: EvenPolynomial) -> None:
        # null e_o and e_inf give H H~ = t^2 - 1, sharing the roots +-1 with t^4 - 1
        with pytest.raises(ExhaustedAttempts):
            find_cofactor(hyperbolic, e=CgaVector(a_o=1.0), f=CgaVector(a_inf=1.0))


class TestRealCofactor:
    def test_hyperbolic_rotation(self, hyperbolic: EvenPolynomial) -> None:
        result: RealCofactorResult = real_cofactor(hyperbolic, seed=0)
        assert result.R.degree == 2 * len(result.cofactors)
        assert len(result.factorization.factors) == hyperbolic.degree + result.R.degree
        assert result.factorization.residual <= 1e-8

    def test_already_factorizable_needs_no_cofactor(self, rng) -> None:
        p: EvenPolynomial = random_spinor_polynomial(rng, 2)
        result: RealCofactorResult = real_cofactor(p)
        assert result.cofactors == ()
        assert result.R.degree == 0
        assert result.factorization.residual <= 1e-8


class TestSeededCofactors:
    def test_hundred_quadratics(self) -> None:
        rng: np.random.Generator = np.random.default_rng(100)
        certified: int = 0
        for seed in range(100):
            p: EvenPolynomial = random_spinor_polynomial(rng, 2)
            result: CofactorResult = find_cofactor(p, seed=seed)
            if result.certificate is not None:
                certified += 1
            product: EvenPolynomial = p * result.H
            if result.product_factorization is not None:
                assert verify(product, result.product_factorization) <= ACCEPT_TOL
            else:
                assert result.left_factor is not None
                assert left_evaluate(product, result.left_factor.h).norm() <= 1e-6 * max(
                    1.0, product.magnitude()
                )
        assert certified >= 95
