"""Multiplication technique: linear spinor cofactors that make a product factor.

For a spinor polynomial ``P`` without linear factors, a generic linear spinor
``H = t - e^f`` built from two non-orthogonal vectors ``e`` and ``f`` makes
``P H`` admit both a left and a right factor.  Iterating gives a real
cofactor ``R = H1 H1~ ... Hk Hk~`` for which ``P R`` splits completely.

Usage:
    poetry run python -m spinorfact.mult_technique --seed 3
"""

from __future__ import annotations

import argparse
import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from spinorfact.annihilator import left_annihilator_nullspace, right_annihilator
from spinorfact.cga_core import (
    E1,
    E2,
    EINF,
    EO,
    EPS3,
    ONE,
    CgaVector,
    Multivector,
    dot,
    wedge,
)
from spinorfact.errors import DegenerateData, ExhaustedAttempts, SpinorFactError
from spinorfact.factorization import (
    FactorOptions,
    Factorization,
    FactorReport,
    LinearFactor,
    factorize_all,
    format_four_quat,
    left_factor_geometric,
    right_factor_geometric,
    verify,
)
from spinorfact.spinor_poly import (
    EvenPolynomial,
    QuadraticFactor,
    RealPolynomial,
    SpinorPolynomial,
    divide_right,
    find_roots,
    left_evaluate,
    norm_poly,
    quadratic_factors,
    right_evaluate,
)

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

DEFAULT_SEED: int = 0
DEFAULT_MAX_ATTEMPTS: int = 20
DEFAULT_MAX_ROUNDS: int = 8
REJECT_TOL: float = 1e-6
FACTOR_CHECK_TOL: float = 1e-8
BRANCHES: Tuple[str, ...] = ("two_root", "single_root")

logger: logging.Logger = logging.getLogger(__name__)

PolyLike = Union[SpinorPolynomial, EvenPolynomial]


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnnihilatorCertificate:
    """Annihilating points that witness a left and a right factor of ``P H``.

    ``left_pair`` annihilates ``C(z)`` from the left at ``left_roots``;
    ``right_pair`` annihilates ``C(z)`` from the right at ``right_roots``.
    """

    branch: str
    left_roots: Tuple[complex, complex]
    left_pair: Tuple[CgaVector, CgaVector]
    right_roots: Tuple[complex, complex]
    right_pair: Tuple[CgaVector, CgaVector]

    def min_overlap(self) -> float:
        """Smallest normalized ``|a1.a2|`` over both pairs."""
        return min(_overlap(*self.left_pair), _overlap(*self.right_pair))


@dataclass(frozen=True)
class CofactorResult:
    """Outcome of ``find_cofactor``."""

    H: EvenPolynomial  # noqa: N815
    e: CgaVector
    f: CgaVector
    product_factorization: Optional[Factorization]
    attempts: int
    left_factor: Optional[LinearFactor] = None
    right_factor: Optional[LinearFactor] = None
    certificate: Optional[AnnihilatorCertificate] = None


@dataclass(frozen=True)
class RealCofactorResult:
    """``R`` with a verified factorization of ``P R`` and the linear cofactors behind it."""

    R: RealPolynomial  # noqa: N815
    cofactors: Tuple[EvenPolynomial, ...]
    factorization: Factorization


def _poly(c: PolyLike) -> EvenPolynomial:
    return c.poly if isinstance(c, SpinorPolynomial) else c


def _overlap(a: CgaVector, b: CgaVector) -> float:
    size: float = a.magnitude() * b.magnitude()
    return abs(dot(a, b)) / size if size else 0.0


def _vector(mv: Multivector) -> CgaVector:
    return CgaVector.from_multivector(mv.grade(1), tol=1.0)


# ---------------------------------------------------------------------------
# Cofactor construction
# ---------------------------------------------------------------------------


def cofactor_from_points(e: CgaVector, f: CgaVector) -> EvenPolynomial:
    """``H = t - e^f`` with norm ``t^2 - (e.f)^2 + (e.e)(f.f)``.

    Raises:
        ValueError: If ``e`` and ``f`` are orthogonal.
    """
    if abs(dot(e, f)) <= REJECT_TOL * e.magnitude() * f.magnitude():
        raise ValueError("cofactor points must not be orthogonal")
    return EvenPolynomial.linear(wedge(e, f))


def cofactor_roots(cofactor: EvenPolynomial) -> List[Tuple[complex, int]]:
    """Roots of ``H H~`` with multiplicities."""
    return list(find_roots(norm_poly(cofactor)).roots)


def annihilator_certificate(
    p: PolyLike, e: CgaVector, f: CgaVector
) -> AnnihilatorCertificate:
    """Annihilating points of ``C = P H`` at the roots of both norm factors.

    At a root ``z`` of ``H H~`` a left annihilator ``y`` of ``H(z)`` gives
    ``P(z) y P(z)~``, a left annihilator of ``C(z)`` because ``P~ P`` is real.
    For null ``e`` and ``f`` these are ``P(z) f P(z)~`` at ``z = e.f`` and
    ``P(z) e P(z)~`` at ``z = -e.f``.  When ``P P~`` has two distinct roots
    ``t1, t2`` with right annihilators ``b1, b2`` of ``P``, the conjugates
    ``H(ti)~ bi H(ti)`` annihilate ``C`` from the right.  When it has a single
    root ``z``, the left and right annihilators of ``P(z)`` supply the missing
    points; this pairs a root of ``H H~`` with ``z`` and so needs real roots.

    Raises:
        DegenerateData: If ``H H~`` has a double root, if the single-root
            branch meets complex roots of ``H H~``, or if a constructed
            annihilator vanishes.
    """
    poly: EvenPolynomial = _poly(p)
    cofactor: EvenPolynomial = cofactor_from_points(e, f)
    roots: List[Tuple[complex, int]] = cofactor_roots(cofactor)
    if len(roots) != 2:
        raise DegenerateData("H H~ has a double root")
    z1, z2 = roots[0][0], roots[1][0]

    def left_at(z: complex) -> CgaVector:
        value: Multivector = poly(z)
        y: Multivector = left_annihilator_nullspace(cofactor(z)).point.to_multivector()
        return _vector(value * y * value.reverse())

    def right_through(z: complex, b: CgaVector) -> CgaVector:
        value: Multivector = cofactor(z)
        return _vector(value.reverse() * b.to_multivector() * value)

    norm: RealPolynomial = norm_poly(poly)
    distinct: List[QuadraticFactor] = [q for q in quadratic_factors(norm) if not q.is_double]
    if distinct:
        quad: QuadraticFactor = distinct[0]
        b1: CgaVector = right_annihilator(poly(quad.z1)).point
        b2: CgaVector = (
            b1.conj() if quad.is_conjugate else right_annihilator(poly(quad.z2)).point
        )
        certificate: AnnihilatorCertificate = AnnihilatorCertificate(
            "two_root",
            (z1, z2),
            (left_at(z1), left_at(z2)),
            (quad.z1, quad.z2),
            (right_through(quad.z1, b1), right_through(quad.z2, b2)),
        )
    else:
        if abs(z1.imag) > REJECT_TOL or abs(z2.imag) > REJECT_TOL:
            raise DegenerateData("the single-root branch needs real roots of H H~")
        z: complex = find_roots(norm).roots[0][0]
        value: Multivector = poly(z)
        left_point: CgaVector = left_annihilator_nullspace(value).point
        right_point: CgaVector = right_annihilator(value).point
        certificate = AnnihilatorCertificate(
            "single_root",
            (z1, z),
            (left_at(z1), left_point),
            (z, z2),
            (right_through(z, right_point), right_annihilator(cofactor(z2)).point),
        )

    for vec in certificate.left_pair + certificate.right_pair:
        if vec.magnitude() <= 1e-12:
            raise DegenerateData("a constructed annihilator vanishes")
    return certificate


def _sample_vector(rng: np.random.Generator) -> CgaVector:
    return CgaVector.from_array(rng.uniform(-1.0, 1.0, 5))


def _roots_disjoint(norm: RealPolynomial, cofactor: EvenPolynomial) -> bool:
    values: List[complex] = [z for z, _ in find_roots(norm).roots]
    others: List[complex] = [z for z, _ in cofactor_roots(cofactor)]
    scale: float = max([1.0] + [abs(v) for v in values + others])
    return all(abs(v - w) > REJECT_TOL * scale for v in values for w in others)


def _certified_factors(
    c: EvenPolynomial, certificate: AnnihilatorCertificate
) -> Tuple[LinearFactor, LinearFactor]:
    left: LinearFactor = left_factor_geometric(
        c, *certificate.left_roots, annihilators=certificate.left_pair
    )
    right: LinearFactor = right_factor_geometric(
        c, *certificate.right_roots, annihilators=certificate.right_pair
    )
    size: float = max(1.0, c.magnitude())
    grow: float = max(1.0, left.h.norm(), right.h.norm()) ** c.degree
    if left_evaluate(c, left.h).norm() > FACTOR_CHECK_TOL * size * grow:
        raise ValueError("certified left factor does not annihilate the product")
    if right_evaluate(c, right.h).norm() > FACTOR_CHECK_TOL * size * grow:
        raise ValueError("certified right factor does not annihilate the product")
    return left, right


def find_cofactor(
    p: PolyLike,
    seed: int = DEFAULT_SEED,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    e: Optional[CgaVector] = None,
    f: Optional[CgaVector] = None,
) -> CofactorResult:
    """Find ``H = t - e^f`` such that ``P H`` admits a left and a right factor.

    The five coordinates of ``e`` and ``f`` are uniform in ``[-1, 1]``.
    Explicit ``e`` and ``f`` skip sampling and allow a single attempt.  An
    attempt succeeds when ``P H`` factors completely, or when the annihilator
    certificate yields a verified left and right factor.

    Raises:
        ValueError: If ``P`` is constant.
        ExhaustedAttempts: If no attempt succeeds.
    """
    poly: EvenPolynomial = _poly(p)
    if poly.degree < 1:
        raise ValueError("find_cofactor needs a polynomial of degree at least one")
    rng: np.random.Generator = np.random.default_rng(seed)
    fixed: bool = e is not None and f is not None
    budget: int = 1 if fixed else max_attempts
    norm: RealPolynomial = norm_poly(poly)
    t_start: float = time.monotonic()

    for attempt in tqdm(range(1, budget + 1), desc="Cofactor", disable=None, leave=False):
        ev: CgaVector = e if fixed else _sample_vector(rng)  # type: ignore[assignment]
        fv: CgaVector = f if fixed else _sample_vector(rng)  # type: ignore[assignment]
        if abs(dot(ev, fv)) <= REJECT_TOL * ev.magnitude() * fv.magnitude():
            logger.debug("Attempt %d rejected -- orthogonal vectors", attempt)
            continue
        cofactor: EvenPolynomial = cofactor_from_points(ev, fv)
        if not _roots_disjoint(norm, cofactor):
            logger.debug("Attempt %d rejected -- cofactor roots collide", attempt)
            continue
        product: EvenPolynomial = poly * cofactor

        certificate: Optional[AnnihilatorCertificate] = None
        left: Optional[LinearFactor] = None
        right: Optional[LinearFactor] = None
        try:
            certificate = annihilator_certificate(poly, ev, fv)
            if certificate.min_overlap() > REJECT_TOL:
                left, right = _certified_factors(product, certificate)
        except (SpinorFactError, ValueError) as exc:
            logger.debug("Attempt %d -- certificate unavailable (%s)", attempt, exc)

        report: FactorReport = factorize_all(product, FactorOptions(seed=seed))
        factorization: Optional[Factorization] = (
            report.factorizations[0] if report.factorizations else None
        )
        if factorization is None and (left is None or right is None):
            logger.warning("Cofactor attempt %d did not produce factors -- resampling", attempt)
            continue

        elapsed_ms: float = (time.monotonic() - t_start) * 1000.0
        logger.info("Cofactor found after %d attempt(s) in %.1f ms", attempt, elapsed_ms)
        return CofactorResult(cofactor, ev, fv, factorization, attempt, left, right, certificate)

    raise ExhaustedAttempts(f"no suitable cofactor within {budget} attempt(s)")


def _monic(poly: EvenPolynomial) -> Tuple[EvenPolynomial, Multivector]:
    lead: Multivector = poly.leading
    return poly * lead.inverse(), lead


def real_cofactor(
    p: PolyLike,
    seed: int = DEFAULT_SEED,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> RealCofactorResult:
    """Real ``R`` such that ``P R`` factors into linear factors.

    Each round multiplies the unfactored core by a cofactor ``H`` and peels
    the left factor it certifies.  The factorization of ``P R`` is the
    peeled factors, the factors of the final core, then the reversed
    cofactors ``H~`` in reverse order, then the leading coefficient of ``P``.

    Raises:
        ExhaustedAttempts: If the rounds run out before the core factors.
    """
    poly: EvenPolynomial = _poly(p)
    monic, lead = _monic(poly)
    core: EvenPolynomial = monic
    peeled: List[LinearFactor] = []
    cofactors: List[EvenPolynomial] = []
    core_lead: Multivector = ONE

    for round_index in range(max_rounds + 1):
        report: FactorReport = factorize_all(core, FactorOptions(seed=seed + round_index))
        if report.factorizations:
            tail: Factorization = report.factorizations[0]
            peeled.extend(tail.factors)
            core_lead = tail.lead
            break
        if round_index == max_rounds:
            raise ExhaustedAttempts(f"core still unfactored after {max_rounds} round(s)")
        result: CofactorResult = find_cofactor(core, seed + round_index, max_attempts)
        cofactors.append(result.H)
        if result.product_factorization is not None:
            peeled.extend(result.product_factorization.factors)
            core_lead = result.product_factorization.lead
            break
        if result.left_factor is None:
            raise ExhaustedAttempts("cofactor carries neither a factorization nor a left factor")
        peeled.append(result.left_factor)
        core, _ = divide_right(core * result.H, result.left_factor.polynomial)
        logger.debug("Round %d peeled one factor -- core degree %d", round_index, core.degree)

    # Monic inputs keep a monic core, so core_lead is one up to rounding.
    real: RealPolynomial = RealPolynomial((1.0,))
    reversed_factors: List[LinearFactor] = []
    for cofactor in reversed(cofactors):
        real = real * norm_poly(cofactor)
        h: Multivector = (-cofactor.coefficient(0)).reverse()
        reversed_factors.append(LinearFactor(h, _quadratic_of(h), "left", "cofactor"))
    factors: Tuple[LinearFactor, ...] = tuple(peeled) + tuple(reversed_factors)
    candidate: Factorization = Factorization(factors, 0.0, "real-cofactor", core_lead * lead)
    target: EvenPolynomial = poly * EvenPolynomial.from_real(real)
    residual: float = verify(target, candidate)
    logger.info("Real cofactor of degree %d -- residual %.2e", real.degree, residual)
    return RealCofactorResult(
        real,
        tuple(cofactors),
        Factorization(factors, residual, "real-cofactor", core_lead * lead),
    )


def _quadratic_of(h: Multivector) -> QuadraticFactor:
    trace: float = float(2.0 * h.scalar_part.real)
    product: float = float((h * h.reverse()).scalar_part.real)
    disc: complex = complex(trace * trace - 4.0 * product) ** 0.5
    z1: complex = (trace + disc) / 2.0
    z2: complex = (trace - disc) / 2.0
    if z1.imag < 0:
        z1, z2 = z2, z1
    if z1.imag == 0 and z2.real < z1.real:
        z1, z2 = z2, z1
    return QuadraticFactor(z1, z2)


# ---------------------------------------------------------------------------
# Worked construction
# ---------------------------------------------------------------------------


def hyperbolic_rotation_polynomial() -> EvenPolynomial:
    """``t^2 + eps3``, whose norm ``(t^2 + 1)(t^2 - 1)`` admits no factorization."""
    return EvenPolynomial([EPS3, 0.0, ONE])


def sphere_pair_points() -> Tuple[CgaVector, CgaVector]:
    """``e = e1 + e_o`` and ``f = e2 + e_inf`` with ``e.f = -1``."""
    return (
        CgaVector.from_multivector(E1 + EO),
        CgaVector.from_multivector(E2 + EINF),
    )


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
    """CLI entry-point: make ``t^2 + eps3`` factorable with a sampled cofactor."""
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        description="Find a linear cofactor that makes t^2 + eps3 factorable.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed")
    parser.add_argument(
        "--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS, help="Sampling budget"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    args: argparse.Namespace = parser.parse_args()
    _configure_logging(args.verbose)

    p: EvenPolynomial = hyperbolic_rotation_polynomial()
    result: CofactorResult = find_cofactor(p, args.seed, args.max_attempts)
    sep: str = "=" * 55
    print(f"\n{sep}\n  Cofactor after {result.attempts} attempt(s)\n{sep}")
    print(f"  H = t - ({format_four_quat(-result.H.coefficient(0))})")
    if result.product_factorization is not None:
        for factor in result.product_factorization.factors:
            print(f"    t - ({format_four_quat(factor.h)})")
    print(f"\n{sep}\n")


if __name__ == "__main__":
    main()
