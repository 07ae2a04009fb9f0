"""Tests for the spherical four-bar pipeline (spinorfact.fourbar_demo).

The worked linkage has fixed axes ``(0, 1, 1)/sqrt(2)`` and ``(0, 0, 1)``
and moving axes ``(3, 4, 0)/5`` and ``(1, 0, 0)``, all up to sign.
"""
from __future__ import annotations

from typing import List, Sequence

import numpy as np
import pytest

from spinorfact.annihilator import projective_angle
from spinorfact.cga_core import CgaVector, Quaternion
from spinorfact.errors import NonRealAxis
from spinorfact.fourbar_demo import (
    EXPECTED_POINTS,
    FIXED_AXES,
    MOVING_AXES,
    FourBarReport,
    QuadricSystem,
    RulingGraph,
    axis_direction,
    circle_constraint,
    null_point_record,
    pair_by_rulings,
    reference_null_points,
    run_fourbar,
    solve_quadric_system,
    spherical_four_bar_system,
)

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def system() -> QuadricSystem:
    return spherical_four_bar_system()


@pytest.fixture(scope="module")
def report() -> FourBarReport:
    """Pipeline on the reference null points, skipping the solver."""
    return run_fourbar(points=reference_null_points())


def _same_axes(found: Sequence[np.ndarray], expected: Sequence[np.ndarray]) -> bool:
    """Equal as unordered sets of lines through the origin."""
    for axis in expected:
        if not any(abs(abs(float(axis @ other)) - 1.0) <= 1e-6 for other in found):
            return False
    return len(found) == len(expected)


# ---------------------------------------------------------------------------
# Quadric systems
# ---------------------------------------------------------------------------


class TestQuadricSystem:
    def test_diagonals(self, system: QuadricSystem) -> None:
        first, second, null = system.forms
        np.testing.assert_allclose(np.diag(first), [1, 1, 1, 1], atol=1e-12)
        np.testing.assert_allclose(np.diag(second), [13, -3, 13, -3], atol=1e-12)
        np.testing.assert_allclose(null, np.eye(4))

    def test_reference_points_lie_on_the_curve(self, system: QuadricSystem) -> None:
        for q in reference_null_points():
            values: np.ndarray = system.evaluate(q.as_array())
            assert np.max(np.abs(values)) <= 1e-10

    def test_rejects_asymmetric_form(self) -> None:
        bad: np.ndarray = np.eye(4)
        bad[0, 1] = 1.0
        with pytest.raises(ValueError, match="symmetric"):
            QuadricSystem.from_curve(bad, np.eye(4))

    def test_rejects_wrong_shape(self) -> None:
        with pytest.raises(ValueError, match="4x4"):
            QuadricSystem((np.eye(3), np.eye(4), np.eye(4)))

    def test_rejects_wrong_count(self) -> None:
        with pytest.raises(ValueError, match="three forms"):
            QuadricSystem((np.eye(4), np.eye(4)))  # type: ignore[arg-type]

    def test_jacobian_matches_finite_difference(self, system: QuadricSystem) -> None:
        x: np.ndarray = np.array([0.3, -0.2, 0.7, 0.1])
        step: float = 1e-6
        numeric: np.ndarray = np.column_stack(
            [
                (system.evaluate(x + step * e) - system.evaluate(x - step * e)) / (2 * step)
                for e in np.eye(4)
            ]
        )
        np.testing.assert_allclose(system.jacobian(x), numeric, atol=1e-6)


class TestCircleConstraint:
    def test_symmetric(self) -> None:
        form: np.ndarray = circle_constraint([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], 0.2)
        np.testing.assert_allclose(form, form.T)

    def test_identity_rotation(self) -> None:
        f = np.array([0.0, 0.6, 0.8])
        m = np.array([0.0, 0.0, 1.0])
        form: np.ndarray = circle_constraint(f, m, 0.5)
        x: np.ndarray = np.array([1.0, 0.0, 0.0, 0.0])
        assert x @ form @ x == pytest.approx(float(f @ m) - 0.5)


# ---------------------------------------------------------------------------
# Homotopy continuation
# ---------------------------------------------------------------------------


class TestSolver:
    def test_recovers_reference_points(self, system: QuadricSystem) -> None:
        solutions: List[np.ndarray] = solve_quadric_system(system, seed=0)
        assert len(solutions) == EXPECTED_POINTS
        references: List[np.ndarray] = [q.as_array() for q in reference_null_points()]
        for ref in references:
            angles = [
                np.linalg.norm(x - (np.vdot(ref, x) / np.vdot(ref, ref)) * ref) / np.linalg.norm(x)
                for x in solutions
            ]
            assert min(angles) <= 1e-6

    def test_solutions_are_normalized(self, system: QuadricSystem) -> None:
        for x in solve_quadric_system(system, seed=1):
            assert np.linalg.norm(x) == pytest.approx(1.0)
            assert np.max(np.abs(system.evaluate(x))) <= 1e-8


# ---------------------------------------------------------------------------
# Rulings and axes
# ---------------------------------------------------------------------------


class TestRulings:
    def test_each_kind_is_a_perfect_matching(self, report: FourBarReport) -> None:
        rulings: RulingGraph = report.rulings
        for pairs in (rulings.first, rulings.second):
            assert len(pairs) == EXPECTED_POINTS // 2
            covered = sorted(i for pair in pairs for i in pair)
            assert covered == list(range(EXPECTED_POINTS))

    def test_partners_recorded(self, report: FourBarReport) -> None:
        for record in report.points:
            assert set(record.ruling_partners) == {"first", "second"}

    def test_first_kind_shares_right_annihilator(self, report: FourBarReport) -> None:
        for i, j in report.rulings.first:
            a, b = report.points[i].right_ann, report.points[j].right_ann
            assert projective_angle(a, b) <= 1e-6

    def test_second_kind_shares_left_annihilator(self, report: FourBarReport) -> None:
        for i, j in report.rulings.second:
            a, b = report.points[i].left_ann, report.points[j].left_ann
            assert projective_angle(a, b) <= 1e-6

    def test_reference_pairs(self, report: FourBarReport) -> None:
        # indices 0..3 are n1..n4, 4..7 their conjugates
        assert report.rulings.first == ((0, 1), (2, 7), (3, 6), (4, 5))
        assert report.rulings.second == ((0, 5), (1, 4), (2, 3), (6, 7))

    def test_needs_two_points(self) -> None:
        with pytest.raises(ValueError):
            pair_by_rulings([null_point_record(reference_null_points()[0])])


class TestAxes:
    def test_fixed_axes(self, report: FourBarReport) -> None:
        assert _same_axes(report.axes.fixed, FIXED_AXES)

    def test_moving_axes(self, report: FourBarReport) -> None:
        assert _same_axes(report.axes.moving, MOVING_AXES)

    def test_axes_are_unit_with_positive_pivot(self, report: FourBarReport) -> None:
        for axis in report.axes.fixed + report.axes.moving:
            assert np.linalg.norm(axis) == pytest.approx(1.0)
            pivot: float = float(axis[np.flatnonzero(np.abs(axis) > 1e-9)[0]])
            assert pivot > 0

    def test_first_point_right_annihilator(self) -> None:
        record = null_point_record(reference_null_points()[0])
        expected: CgaVector = CgaVector(a2=1.0, a3=1j)
        assert projective_angle(record.right_ann, expected) <= 1e-7

    def test_real_annihilator_has_no_axis(self) -> None:
        with pytest.raises(NonRealAxis):
            axis_direction(CgaVector(a1=1.0))

    def test_full_pipeline_with_solver(self) -> None:
        solved: FourBarReport = run_fourbar(seed=0)
        assert _same_axes(solved.axes.fixed, FIXED_AXES)
        assert _same_axes(solved.axes.moving, MOVING_AXES)

    def test_conjugate_points_pair_up(self) -> None:
        points: List[Quaternion] = reference_null_points()
        assert all(
            np.allclose(points[k + 4].as_array(), np.conj(points[k].as_array())) for k in range(4)
        )
