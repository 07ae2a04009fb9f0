"""Exception hierarchy shared by every spinorfact module.

Two families exist.  ``DomainSignal`` subclasses report a mathematically
meaningful outcome (a polynomial that does not factor, annihilators that
are orthogonal, ...) and map to CLI exit status 2.  ``NumericalFailure``
subclasses report that a solver broke down.  Malformed input is never
reported through this hierarchy: it surfaces as ``ValueError`` or
``pydantic.ValidationError``.
"""

from __future__ import annotations

from typing import Any, List, Sequence


class SpinorFactError(Exception):
    """Base class for every error raised by the library."""


class DomainSignal(SpinorFactError):
    """A mathematically meaningful negative outcome."""


class NumericalFailure(SpinorFactError):
    """A solver did not converge or an internal consistency check failed."""


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------


class ZeroElement(DomainSignal, ValueError):
    """An operation that needs a nonzero element received zero."""


class NotInvertible(DomainSignal):
    """A multivector or quaternion has no inverse within tolerance."""


class NotAVersorAction(DomainSignal):
    """A sandwich product left residue outside grade one."""


class NotSpinor(DomainSignal):
    """A polynomial fails the spinor condition ``C C~ = C~ C`` real and nonzero."""


class NotNullDisplacement(DomainSignal):
    """An even element is not on both the Study variety and the null quadric."""


class NonInvertibleLeadingCoefficient(DomainSignal):
    """Polynomial division needs an invertible leading coefficient."""


class OddDegree(DomainSignal):
    """A norm polynomial of odd degree cannot split into real quadratics."""


# ---------------------------------------------------------------------------
# Annihilators
# ---------------------------------------------------------------------------


class EmptyKernel(DomainSignal):
    """No annihilating vector exists, so the input was not a null displacement."""


class KernelDimensionError(DomainSignal):
    """The annihilator kernel is larger than two, signalling degenerate input."""


class ProbeAnnihilated(DomainSignal):
    """The sandwich probe was mapped to zero; retry with another probe."""


class NowhereDefined(DomainSignal):
    """Every sandwich probe vanished: the displacement has a 2-dim kernel."""


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


class NoCommonZero(DomainSignal):
    """The division remainder and the quadratic factor share no zero."""


class InfiniteFamily(DomainSignal):
    """The left factors for a quadratic form a positive-dimensional family.

    Args:
        message: Human readable description.
        members: Sample even elements ``h`` drawn from the family.
        dimension: Real dimension of the family.
    """

    def __init__(self, message: str, members: Sequence[Any], dimension: int) -> None:
        super().__init__(message)
        self.members: List[Any] = list(members)
        self.dimension: int = dimension


class OrthogonalAnnihilators(DomainSignal):
    """Every choice of annihilating points is orthogonal."""


class NullEvaluationDegenerate(DomainSignal):
    """The polynomial evaluates to zero at a root of its norm."""


class NonRealFactor(DomainSignal):
    """A factor that should be real kept an imaginary residue."""


class NoFactor(DomainSignal):
    """No linear factor exists for the requested quadratic."""


class DegenerateData(DomainSignal):
    """Input data violates a genericity assumption of a construction."""


class ExhaustedAttempts(DomainSignal):
    """A randomized search used up its attempt budget."""


# ---------------------------------------------------------------------------
# Four-bar
# ---------------------------------------------------------------------------


class WrongCount(DomainSignal):
    """A polynomial system produced an unexpected number of solutions."""


class InconsistentRulingGraph(DomainSignal):
    """Ruling pairs do not form a perfect matching per kind."""


class NonRealAxis(DomainSignal):
    """An axis direction kept an imaginary residue."""


# ---------------------------------------------------------------------------
# Numerical failures
# ---------------------------------------------------------------------------


class NoConvergence(NumericalFailure):
    """An iterative method hit its iteration cap."""


class PathFailure(NumericalFailure):
    """A homotopy path could not be tracked to its end."""


class InternalCaseFailure(NumericalFailure):
    """The annihilator case analysis found no applicable case."""
