# errors.py

"""
Exception hierarchy shared by the library and the command line.

Every error carries the exit code the CLI reports for it.
"""

from typing import Optional


class GaborFusionError(Exception):
    exit_code = 1


class DimensionError(GaborFusionError, ValueError):
    """Inputs whose shapes or ambient dimensions disagree."""

    exit_code = 4


class ConfigError(GaborFusionError):
    exit_code = 2


class FrameFileError(GaborFusionError):
    """A frame, signal or measurement file that cannot be parsed."""

    exit_code = 2


class HypothesisError(GaborFusionError):
    """A construction hypothesis failed numerically."""

    exit_code = 3

    def __init__(self, hypothesis: str, message: str, index: Optional[int] = None) -> None:
        self.hypothesis = hypothesis
        self.index = index
        where = f" (index {index})" if index is not None else ""
        super().__init__(f"{hypothesis}: {message}{where}")


class SingularMatrixError(GaborFusionError):
    def __init__(self, message: str, j: Optional[int] = None) -> None:
        self.j = j
        super().__init__(message)


class ModelMismatchError(GaborFusionError):
    pass


class UncertifiedFrameError(GaborFusionError):
    exit_code = 5


class InconsistentMeasurementsError(GaborFusionError):
    exit_code = 6

    def __init__(self, message: str, residual: float) -> None:
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")
