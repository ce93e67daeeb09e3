"""Exception types raised by the solver."""


class MagstabError(Exception):
    """Base class for solver errors."""


class AdmissibilityViolated(MagstabError):
    """Material/loading combination yields complex or non-positive mode exponents."""


class RootCoincidence(MagstabError):
    """Two mode exponents coincide without a usable two-dimensional mode space.

    Carries the offending stretch so the caller can retry at a perturbed value.
    """

    def __init__(self, lam, detail=""):
        self.lam = lam
        super().__init__(f"coincident mode exponents at stretch {lam!r} {detail}".rstrip())


class DegenerateMode(MagstabError):
    """Amplitude elimination failed: all candidate relations vanished."""


class NumericalInconsistency(MagstabError):
    """Internal consistency assertion failed (e.g. determinant grew an imaginary part)."""


class ConfigurationError(MagstabError):
    """Invalid run configuration (bad flag value, unknown preset, malformed config file)."""
