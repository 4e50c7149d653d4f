"""Exception and warning types shared across the package."""


class VortexEmissionError(Exception):
    """Base class for every error this package raises on purpose."""


class ConfigError(VortexEmissionError):
    """A parameter object was constructed with out-of-range values."""


class InvalidScenario(VortexEmissionError):
    """A fast-path formula was called outside its validity conditions."""


class SpectralPole(VortexEmissionError):
    """The resolvent determinant vanished at the requested evaluation point."""


class NotConverged(VortexEmissionError):
    """A spectral integral was requested from an unconverged trajectory."""


class ParseError(VortexEmissionError):
    """A scenario file could not be tokenized into key/value assignments."""


class ValidationError(VortexEmissionError):
    """A scenario file parsed cleanly but described an inconsistent setup."""


class DegenerateProfile(VortexEmissionError):
    """An azimuthal profile is constant, so angular structure is undefined."""


class CheckFailure(VortexEmissionError):
    """A verification suite finished with at least one failing check."""


class NonConvergenceWarning(UserWarning):
    """Survival mass stalled above tolerance with no trapped-state explanation."""
