"""Exception hierarchy shared by all plaplab modules."""


class PlaplabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PlaplabError):
    """Inputs violate a formula's domain (bad exponent, negative radicand, ...)."""


class RangeError(PlaplabError):
    """A radius, window or parameter lies outside the admissible range."""


class SupportError(PlaplabError):
    """A test function's support is not contained in the profile range."""


class SeriesFailure(PlaplabError):
    """The center series cannot be started (non-finite F at the center value)."""


class StepFailure(PlaplabError):
    """The adaptive stepper could not meet its tolerance within max_steps."""


class SingularAssembly(PlaplabError):
    """The quadratic-form weight degenerates everywhere on the interval."""


class DegenerateProfile(PlaplabError):
    """The profile slope vanishes on a set that makes an audit integral blow up."""


class FitError(PlaplabError):
    """A regression has no usable data (e.g. the decay gap underflows)."""


class GateError(PlaplabError):
    """A profile failed the residual gate required before an identity audit."""
