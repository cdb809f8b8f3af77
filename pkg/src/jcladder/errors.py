"""Exception and warning types shared across the package."""


class ConvergenceError(RuntimeError):
    """An iterative or spectral computation failed to reach its tolerance."""


class BranchTrackingError(RuntimeError):
    """The two dressed branches of an avoided crossing could not be identified
    (a third state mixes too strongly at the probed point)."""


class ConfigError(ValueError):
    """Invalid run configuration; the message carries the offending field path."""


class ShallowWellWarning(UserWarning):
    """Retained transmon levels extend past the bound-state-like part of the
    spectrum (E_k above the Josephson barrier top)."""


class SuspiciousScanWarning(UserWarning):
    """A resonance scan produced an implausible number of crossings."""
