"""Axes of a spherical four-bar linkage from the null points of its coupler curve.

The coupler motion is a curve of rotation quaternions cut out by two circle
constraints.  Intersecting it with the null quadric ``|x|^2 = 0`` gives
eight complex points.  Pairs of them lie on common rulings of the quadric;
points on one kind of ruling share a left annihilator, points on the other
kind share a right annihilator.  The wedge ``a ^ conj(a)`` of such an
annihilator is an imaginary multiple of a revolute axis.

Pipeline:
    1. ``intersect_curve_null``  -- homotopy continuation, 8 paths.
    2. ``pair_by_rulings``       -- ruling graph, one perfect matching per kind.
    3. ``axes_from_annihilators`` -- fixed axes (left) and moving axes (right).

Usage:
    poetry run python -m spinorfact.fourbar_demo --seed 0
"""

from __future__ import annotations

import argparse
import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from tqdm import tqdm

from spinorfact.annihilator import left_annihilator_nullspace, projective_angle, right_annihilator
from spinorfact.cga_core import (
    CgaVector,
    Multivector,
    Quaternion,
    to_four_quat,
    wedge,
)
from spinorfact.errors import InconsistentRulingGraph, NonRealAxis, PathFailure, WrongCount

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

DEFAULT_SEED: int = 0
DEFAULT_TOL: float = 1e-10
EXPECTED_POINTS: int = 8
RESIDUAL_TOL: float = 1e-8
DEDUPE_TOL: float = 1e-6
RULING_TOL: float = 1e-7
SHARED_TOL: float = 1e-6
AXIS_REAL_TOL: float = 1e-8
KINDS: Tuple[str, ...] = ("first", "second")

logger: logging.Logger = logging.getLogger(__name__)

_UNITS: Tuple[Quaternion, ...] = (
    Quaternion(1.0, 0.0, 0.0, 0.0),
    Quaternion(0.0, 1.0, 0.0, 0.0),
    Quaternion(0.0, 0.0, 1.0, 0.0),
    Quaternion(0.0, 0.0, 0.0, 1.0),
)

# Axes of the reference linkage.
FIXED_AXES: Tuple[np.ndarray, np.ndarray] = (
    np.array([0.0, 1.0, 1.0]) / np.sqrt(2.0),
    np.array([0.0, 0.0, 1.0]),
)
MOVING_AXES: Tuple[np.ndarray, np.ndarray] = (
    -np.array([3.0, 4.0, 0.0]) / 5.0,
    np.array([-1.0, 0.0, 0.0]),
)


# ---------------------------------------------------------------------------
# Quadric systems
# ---------------------------------------------------------------------------


def _vector_quaternion(v: Sequence[float] | np.ndarray) -> Quaternion:
    arr: np.ndarray = np.asarray(v, dtype=complex).reshape(3)
    return Quaternion(0j, arr[0], arr[1], arr[2])


def circle_constraint(
    f: Sequence[float] | np.ndarray, m: Sequence[float] | np.ndarray, c: float
) -> np.ndarray:
    """Symmetric matrix of ``x -> f.(x m x~) - c |x|^2``.

    The form vanishes on rotations ``x`` that keep the image of the moving
    unit vector ``m`` at constant angle to the fixed unit vector ``f``.
    """
    fq: np.ndarray = np.asarray(f, dtype=float).reshape(3)
    mq: Quaternion = _vector_quaternion(m)
    matrix: np.ndarray = np.zeros((4, 4))
    for a, b in itertools.product(range(4), repeat=2):
        image: Quaternion = (_UNITS[a] * mq * _UNITS[b].conj() + _UNITS[b] * mq * _UNITS[a].conj())
        matrix[a, b] = 0.5 * float(np.real(np.dot(fq, image.as_array()[1:])))
    return matrix - c * np.eye(4)


@dataclass(frozen=True)
class QuadricSystem:
    """Three homogeneous quadratic forms on quaternions ``(x0, x1, x2, x3)``.

    The first two cut out the coupler curve; the third is the null quadric.

    Raises:
        ValueError: If a form is not a symmetric real 4x4 matrix.
    """

    forms: Tuple[np.ndarray, np.ndarray, np.ndarray]

    def __post_init__(self) -> None:
        if len(self.forms) != 3:
            raise ValueError(f"a quadric system needs three forms, got {len(self.forms)}")
        for form in self.forms:
            arr: np.ndarray = np.asarray(form)
            if arr.shape != (4, 4):
                raise ValueError(f"quadric forms must be 4x4, got {arr.shape}")
            if not np.all(np.isfinite(arr)) or np.iscomplexobj(arr) and np.any(arr.imag):
                raise ValueError("quadric forms must be finite and real")
            if not np.allclose(arr, arr.T, atol=1e-12):
                raise ValueError("quadric forms must be symmetric")

    @classmethod
    def from_curve(cls, first: np.ndarray, second: np.ndarray) -> QuadricSystem:
        """Coupler curve generators plus the quaternion norm form."""
        return cls((np.asarray(first, float), np.asarray(second, float), np.eye(4)))

    @classmethod
    def from_axes(
        cls,
        constraints: Sequence[Tuple[np.ndarray, np.ndarray, float, float]],
    ) -> QuadricSystem:
        """Curve from two ``(f, m, c, scale)`` circle constraints."""
        if len(constraints) != 2:
            raise ValueError("a four-bar curve needs exactly two circle constraints")
        first, second = (scale * circle_constraint(f, m, c) for f, m, c, scale in constraints)
        return cls.from_curve(first, second)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.array([x @ form @ x for form in self.forms])

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.vstack([2.0 * (form @ x) for form in self.forms])


def spherical_four_bar_system() -> QuadricSystem:
    """The reference coupler curve, assembled from its axes.

    Scales are chosen so the diagonals read ``(1, 1, 1, 1)`` and
    ``(13, -3, 13, -3)``.
    """
    return QuadricSystem.from_axes(
        [
            (FIXED_AXES[1], MOVING_AXES[1], -0.5, 2.0),
            (FIXED_AXES[0], MOVING_AXES[0], np.sqrt(2.0) / 4.0, -10.0 * np.sqrt(2.0)),
        ]
    )


def reference_null_points() -> List[Quaternion]:
    """The eight reference null points ``n1..n4`` followed by their conjugates."""
    r2: float = float(np.sqrt(2.0))
    base: List[Quaternion] = [
        Quaternion(2.0, -2j, r2 * (1 + 1j), -r2 * (1 - 1j)),
        Quaternion(2.0, -2j, -r2 * (1 + 1j), r2 * (1 - 1j)),
        Quaternion(5.0, -(4 + 3j), 3 - 4j, 5j),
        Quaternion(5.0, 4 + 3j, -(3 - 4j), 5j),
    ]
    return base + [q.complex_conj() for q in base]


# ---------------------------------------------------------------------------
# Homotopy continuation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrackerOptions:
    """Step control for the predictor-corrector tracker."""

    initial_step: float = 0.02
    max_step: float = 0.1
    min_step: float = 1e-9
    newton_iters: int = 4
    corrector_tol: float = 1e-9
    final_iters: int = 30
    max_gammas: int = 5


def _normalize(x: np.ndarray) -> np.ndarray:
    """Unit size with the largest coordinate real and positive."""
    unit: np.ndarray = x / np.linalg.norm(x)
    pivot: complex = complex(unit[int(np.argmax(np.abs(unit)))])
    return unit * (abs(pivot) / pivot)


class _Homotopy:
    """``H(x, s) = (1 - s) gamma G(x) + s F(x)`` on the chart ``l.x = 1``."""

    def __init__(self, system: QuadricSystem, rng: np.random.Generator) -> None:
        self.system: QuadricSystem = system
        self.gamma: complex = complex(np.exp(2j * np.pi * rng.uniform()))
        chart: np.ndarray = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        self.chart: np.ndarray = chart / np.linalg.norm(chart)
        angles: np.ndarray = rng.uniform(0.0, 2.0 * np.pi, 4)
        self.constants: np.ndarray = np.exp(1j * angles)

    def start_points(self) -> List[np.ndarray]:
        """Solutions of ``x_k^2 = c_k`` (k < 3) and ``x_3 = c_3``."""
        roots: List[Tuple[complex, complex]] = [
            (np.sqrt(c), -np.sqrt(c)) for c in self.constants[:3]
        ]
        return [
            np.array([a, b, d, self.constants[3]], dtype=complex)
            for a, b, d in itertools.product(*roots)
        ]

    def start(self, x: np.ndarray) -> np.ndarray:
        return np.concatenate([x[:3] ** 2 - self.constants[:3], [x[3] - self.constants[3]]])

    def start_jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.diag(np.concatenate([2.0 * x[:3], [1.0]]))

    def target(self, x: np.ndarray) -> np.ndarray:
        return np.concatenate([self.system.evaluate(x), [self.chart @ x - 1.0]])

    def target_jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.vstack([self.system.jacobian(x), self.chart])

    def value(self, x: np.ndarray, s: float) -> np.ndarray:
        return (1.0 - s) * self.gamma * self.start(x) + s * self.target(x)

    def jacobian(self, x: np.ndarray, s: float) -> np.ndarray:
        return (1.0 - s) * self.gamma * self.start_jacobian(x) + s * self.target_jacobian(x)

    def ds(self, x: np.ndarray) -> np.ndarray:
        return self.target(x) - self.gamma * self.start(x)


def _newton(
    homotopy: _Homotopy, x: np.ndarray, s: float, iters: int, tol: float
) -> Optional[np.ndarray]:
    for _ in range(iters):
        step: np.ndarray = np.linalg.lstsq(
            homotopy.jacobian(x, s), -homotopy.value(x, s), rcond=None
        )[0]
        x = x + step
        if np.linalg.norm(step) <= tol * max(1.0, float(np.linalg.norm(x))):
            return x
    return None


def _track(homotopy: _Homotopy, x0: np.ndarray, options: TrackerOptions) -> np.ndarray:
    """Euler predictor and Newton corrector from ``s = 0`` to ``s = 1``.

    Raises:
        PathFailure: If the step size collapses.
    """
    x: np.ndarray = x0.copy()
    s: float = 0.0
    step: float = options.initial_step
    while s < 1.0:
        step = min(step, 1.0 - s)
        tangent: np.ndarray = np.linalg.lstsq(
            homotopy.jacobian(x, s), -homotopy.ds(x), rcond=None
        )[0]
        corrected: Optional[np.ndarray] = _newton(
            homotopy, x + step * tangent, s + step, options.newton_iters, options.corrector_tol
        )
        if corrected is None:
            step *= 0.5
            if step < options.min_step:
                raise PathFailure(f"step size collapsed at s={s:.6f}")
            continue
        x, s = corrected, s + step
        step = min(step * 1.5, options.max_step)

    sharpened: Optional[np.ndarray] = _newton(homotopy, x, 1.0, options.final_iters, 1e-14)
    return sharpened if sharpened is not None else x


def _dedupe(points: List[np.ndarray]) -> List[np.ndarray]:
    unique: List[np.ndarray] = []
    for p in points:
        if all(np.linalg.norm(p - q) > DEDUPE_TOL for q in unique):
            unique.append(p)
    return unique


def _sort_key(x: np.ndarray) -> Tuple[float, ...]:
    rounded: np.ndarray = np.round(x, 8)
    return tuple(itertools.chain.from_iterable((v.real, v.imag) for v in rounded))


def solve_quadric_system(
    system: QuadricSystem,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    options: Optional[TrackerOptions] = None,
) -> List[np.ndarray]:
    """Projective solutions of three quadrics in four variables.

    Straight-line homotopy from a total-degree start system in a random
    affine chart, retried with a fresh gamma and chart on path failure.

    Raises:
        PathFailure: If every gamma loses a path.
        WrongCount: If the paths do not end in eight distinct points.
    """
    opts: TrackerOptions = options or TrackerOptions()
    rng: np.random.Generator = np.random.default_rng(seed)
    last_error: Optional[Exception] = None
    for attempt in range(1, opts.max_gammas + 1):
        homotopy: _Homotopy = _Homotopy(system, rng)
        t_start: float = time.monotonic()
        try:
            ends: List[np.ndarray] = [
                _track(homotopy, x0, opts)
                for x0 in tqdm(homotopy.start_points(), desc="Paths", disable=None, leave=False)
            ]
        except PathFailure as exc:
            logger.warning("Gamma %d lost a path (%s) -- retrying", attempt, exc)
            last_error = exc
            continue
        points: List[np.ndarray] = _dedupe([_normalize(x) for x in ends])
        residual: float = max(float(np.max(np.abs(system.evaluate(p)))) for p in points)
        elapsed_ms: float = (time.monotonic() - t_start) * 1000.0
        logger.info(
            "Tracked %d paths in %.1f ms -- %d distinct, residual %.2e",
            len(ends),
            elapsed_ms,
            len(points),
            residual,
        )
        if len(points) != EXPECTED_POINTS or residual > max(RESIDUAL_TOL, tol):
            last_error = WrongCount(
                f"expected {EXPECTED_POINTS} points with residual <= {RESIDUAL_TOL}, "
                f"got {len(points)} with residual {residual:.2e}"
            )
            logger.warning("Gamma %d -- %s", attempt, last_error)
            continue
        return sorted(points, key=_sort_key)
    if isinstance(last_error, WrongCount):
        raise last_error
    raise PathFailure(f"every one of {opts.max_gammas} gammas lost a path") from last_error


# ---------------------------------------------------------------------------
# Null points, rulings and axes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullPointRecord:
    """A null quaternion with its annihilating points and ruling partners."""

    n: Quaternion
    left_ann: CgaVector
    right_ann: CgaVector
    ruling_partners: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class RulingGraph:
    """Ruling pairs by kind; each kind is a perfect matching of the points."""

    graph: nx.Graph
    first: Tuple[Tuple[int, int], ...]
    second: Tuple[Tuple[int, int], ...]

    def partners(self, index: int) -> Dict[str, int]:
        found: Dict[str, int] = {}
        for kind, pairs in (("first", self.first), ("second", self.second)):
            for a, b in pairs:
                if index in (a, b):
                    found[kind] = b if a == index else a
        return found


@dataclass(frozen=True)
class AxisSet:
    """Unit directions of the fixed and moving revolute axes."""

    fixed: Tuple[np.ndarray, np.ndarray]
    moving: Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class FourBarReport:
    points: Tuple[NullPointRecord, ...]
    rulings: RulingGraph
    axes: AxisSet


def null_point_record(q: Quaternion) -> NullPointRecord:
    """Embed ``q`` into the even algebra and attach its annihilating points."""
    n: Multivector = q.to_multivector()
    return NullPointRecord(
        q, left_annihilator_nullspace(n).point, right_annihilator(n).point
    )


def _polar(a: Quaternion, b: Quaternion) -> complex:
    return complex(np.sum(a.as_array() * b.as_array()))


def pair_by_rulings(points: Sequence[NullPointRecord]) -> RulingGraph:
    """Ruling pairs ``S(n_i, n_j) = 0`` split by the annihilator they share.

    Pairs sharing a right annihilator are of the first kind, pairs sharing a
    left annihilator of the second kind.

    Raises:
        ValueError: If fewer than two points are given.
        InconsistentRulingGraph: If a kind is not a perfect matching.
    """
    if len(points) < 2:
        raise ValueError("ruling pairs need at least two points")
    graph: nx.Graph = nx.Graph()
    graph.add_nodes_from(range(len(points)))
    for i, j in itertools.combinations(range(len(points)), 2):
        a, b = points[i].n, points[j].n
        scale: float = float(np.linalg.norm(a.as_array()) * np.linalg.norm(b.as_array()))
        if abs(_polar(a, b)) > RULING_TOL * scale:
            continue
        if projective_angle(points[i].left_ann, points[j].left_ann) <= SHARED_TOL:
            graph.add_edge(i, j, kind="second")
        elif projective_angle(points[i].right_ann, points[j].right_ann) <= SHARED_TOL:
            graph.add_edge(i, j, kind="first")
        else:
            raise InconsistentRulingGraph(f"points {i} and {j} share a ruling but no annihilator")

    kinds: Dict[str, Tuple[Tuple[int, int], ...]] = {}
    for kind in KINDS:
        edges: Tuple[Tuple[int, int], ...] = tuple(
            sorted((min(u, v), max(u, v)) for u, v, k in graph.edges(data="kind") if k == kind)
        )
        if not nx.is_perfect_matching(graph, set(edges)):
            raise InconsistentRulingGraph(f"{kind}-kind rulings do not match every point once")
        kinds[kind] = edges
    logger.debug("Ruling graph -- first=%s second=%s", kinds["first"], kinds["second"])
    return RulingGraph(graph, kinds["first"], kinds["second"])


def axis_direction(a: CgaVector) -> np.ndarray:
    """Real unit direction of ``(a ^ conj(a)) / i`` read as a quaternion.

    The sign makes the first nonzero coordinate positive.

    Raises:
        NonRealAxis: If the wedge is not purely imaginary.
    """
    bivector: Multivector = wedge(a, a.conj())
    direction: np.ndarray = to_four_quat(bivector).q0.as_array()[1:] / 1j
    size: float = float(np.linalg.norm(direction))
    if size == 0.0:
        raise NonRealAxis("annihilator is real, so its wedge with the conjugate vanishes")
    if np.linalg.norm(direction.imag) > AXIS_REAL_TOL * size:
        raise NonRealAxis("axis direction keeps an imaginary residue")
    unit: np.ndarray = direction.real / size
    pivot: int = int(np.flatnonzero(np.abs(unit) > 1e-9)[0])
    return unit if unit[pivot] > 0 else -unit


def _distinct_axes(vectors: List[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    unique: List[np.ndarray] = []
    for v in vectors:
        if all(abs(abs(float(v @ u)) - 1.0) > 1e-6 for u in unique):
            unique.append(v)
    if len(unique) != 2:
        raise WrongCount(f"expected two distinct axes, found {len(unique)}")
    return unique[0], unique[1]


def axes_from_annihilators(
    points: Sequence[NullPointRecord], rulings: RulingGraph
) -> AxisSet:
    """Fixed axes from left annihilators of second-kind pairs, moving from right of first-kind."""
    fixed: List[np.ndarray] = [axis_direction(points[i].left_ann) for i, _ in rulings.second]
    moving: List[np.ndarray] = [axis_direction(points[i].right_ann) for i, _ in rulings.first]
    return AxisSet(_distinct_axes(fixed), _distinct_axes(moving))


def intersect_curve_null(
    system: QuadricSystem,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    options: Optional[TrackerOptions] = None,
) -> List[NullPointRecord]:
    """The eight curve points on the null quadric with their annihilators."""
    solutions: List[np.ndarray] = solve_quadric_system(system, seed, tol, options)
    return [null_point_record(Quaternion.from_array(x)) for x in solutions]


def run_fourbar(
    system: Optional[QuadricSystem] = None,
    points: Optional[Sequence[Quaternion]] = None,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
) -> FourBarReport:
    """Whole pipeline; explicit ``points`` bypass the homotopy solver."""
    if points is not None:
        records: List[NullPointRecord] = [null_point_record(q) for q in points]
    else:
        records = intersect_curve_null(system or spherical_four_bar_system(), seed, tol)
    rulings: RulingGraph = pair_by_rulings(records)
    records = [
        NullPointRecord(r.n, r.left_ann, r.right_ann, rulings.partners(i))
        for i, r in enumerate(records)
    ]
    return FourBarReport(tuple(records), rulings, axes_from_annihilators(records, rulings))


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
    """CLI entry-point: recover the four axes of the built-in linkage."""
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        description="Recover the revolute axes of the built-in spherical four-bar.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Homotopy seed")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    args: argparse.Namespace = parser.parse_args()
    _configure_logging(args.verbose)

    report: FourBarReport = run_fourbar(seed=args.seed)
    sep: str = "=" * 55
    print(f"\n{sep}\n  Spherical four-bar axes\n{sep}")
    for label, axis in zip(("f1", "f2"), report.axes.fixed):
        print(f"  {label} = {np.round(axis, 6)}")
    for label, axis in zip(("m1", "m2"), report.axes.moving):
        print(f"  {label} = {np.round(axis, 6)}")
    print(f"\n  first-kind pairs:  {report.rulings.first}")
    print(f"  second-kind pairs: {report.rulings.second}")
    print(f"\n{sep}\n")


if __name__ == "__main__":
    main()
