"""Exception and warning types shared across the package."""


class EpicycleError(Exception):
    """Base class for all package errors."""


class ZeroNorm(EpicycleError, ZeroDivisionError):
    """Inverse requested for an element of zero length."""


class GradeError(EpicycleError, TypeError):
    """Operation requested on an element of the wrong grade."""


class NonPositiveParameter(EpicycleError, ValueError):
    """A physical parameter that must be strictly positive was not."""


class InvalidConfig(EpicycleError, ValueError):
    """A configuration value violates its invariants."""


class ResonantDivergence(EpicycleError, ArithmeticError):
    """The frequency ratio sits on a pole of the first-order coefficients."""

    def __init__(self, which: int, alpha: float):
        self.which = which
        self.alpha = alpha
        super().__init__(f"resonant ratio {which}: alpha = {alpha!r} makes the orbit divergent")


class NearResonanceError(EpicycleError, ArithmeticError):
    """The frequency ratio is within the guard band of a resonance and no override was given."""

    def __init__(self, which: int, alpha: float, distance: float, guard: float):
        self.which = which
        self.alpha = alpha
        self.distance = distance
        self.guard = guard
        super().__init__(
            f"alpha = {alpha!r} is within {distance:.3g} of resonant ratio {which} "
            f"(guard {guard:.3g}); pass allow_near_resonant=True to proceed"
        )


class TranscriptionError(EpicycleError, AssertionError):
    """The two independent routes to the homogeneous coefficients disagree."""


class SingularRadius(EpicycleError, FloatingPointError):
    """Numerical trajectory came too close to the nucleus."""


class WindowMismatch(EpicycleError, ValueError):
    """Comparison window is not covered by the numeric trajectory."""


class NearResonanceWarning(UserWarning):
    """Coefficients were evaluated inside a resonance guard band."""


class PerturbationRegimeWarning(UserWarning):
    """Forcing strength is outside the regime where first-order theory is meaningful."""
