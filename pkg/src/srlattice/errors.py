"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid physical or numerical parameters."""


class ParameterError(ValueError):
    """Operation argument outside its supported range."""


class TruncationError(ValueError):
    """Requested Fourier harmonic lies beyond the Floquet truncation."""


class ResolutionError(ValueError):
    """Sampling grid too coarse to resolve the requested harmonic."""


class DegenerateConeError(RuntimeError):
    """Chirality is numerically ill-defined (vanishing cone Jacobian)."""


class GridTooCoarseError(RuntimeError):
    """Lattice-gauge Chern sum failed to lock onto an integer."""


class SolverError(RuntimeError):
    """Linear steady-state solve violated its residual or sign contract."""
