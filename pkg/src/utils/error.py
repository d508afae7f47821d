"""
Module: Errors raised across the register simulation

Public Classes:
    FullSpaceTooLargeError   : Ring too large for the full 2^N space
    InvalidRingSpecError     : Register description violates its invariants
    NotHermitianError        : Matrix is not its own conjugate transpose
    DimensionMismatchError   : Operands have incompatible dimensions
    InvalidScheduleError     : Phase schedule violates its invariants
    InvalidStateError        : Amplitude vector violates state invariants
    BasisMismatchError       : States or trajectories live in different bases
    EmptySectorError         : Nothing left to renormalize after a projection
    SpectrumError            : Eigendecomposition failed
    NonCommutingScheduleError: Exact path requested for a non-commuting schedule
    StepSizeError            : Stepped integrator grid is invalid
    ConfigError              : Experiment configuration is invalid
    OutputPathError          : Output path cannot be written
"""

from .. import config


class FullSpaceTooLargeError(ValueError):
    """
    Ring too large for the full 2^N space
    """

    def __init__(self, n_sites: int) -> None:
        super().__init__(
            f"full-space too large: n_sites={n_sites} exceeds the limit of "
            f"{config.FULL_SPACE_MAX_SITES} sites"
        )
        self.n_sites = n_sites


class InvalidRingSpecError(ValueError):
    """
    Register description violates its invariants
    """

    pass


class NotHermitianError(ValueError):
    """
    Matrix is not its own conjugate transpose
    """

    pass


class DimensionMismatchError(ValueError):
    """
    Operands have incompatible dimensions
    """

    pass


class InvalidScheduleError(ValueError):
    """
    Phase schedule violates its invariants
    """

    pass


class InvalidStateError(ValueError):
    """
    Amplitude vector violates state invariants
    """

    pass


class BasisMismatchError(ValueError):
    """
    States or trajectories live in different bases
    """

    pass


class EmptySectorError(ValueError):
    """
    Nothing left to renormalize after a projection
    """

    pass


class SpectrumError(ArithmeticError):
    """
    Eigendecomposition failed
    """

    pass


class NonCommutingScheduleError(ValueError):
    """
    Exact path requested for a non-commuting schedule
    """

    pass


class StepSizeError(ValueError):
    """
    Stepped integrator grid is invalid
    """

    pass


class ConfigError(ValueError):
    """
    Experiment configuration is invalid
    """

    pass


class OutputPathError(OSError):
    """
    Output path cannot be written
    """

    pass
