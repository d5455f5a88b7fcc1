# circulant.py

"""
Circulant matrices given by their first column.

The realized matrix has entry (r, c) = c_{(r−c) mod N}, so column j is the
first column shifted down j times. Its determinant is the product of the
polynomial factors c_0 + c_1 ω_j + … + c_{N−1} ω_j^{N−1}, ω_j = exp(2πij/N),
which are also its eigenvalues.
"""

import logging

import numpy as np
import scipy.linalg

from complex_core import ArrayLike, ComplexMatrix, ComplexVector, as_vector
from errors import DimensionError, SingularMatrixError

# Configure logging for this module
logger = logging.getLogger("gaborfusion.circulant")
logger.setLevel(logging.INFO)

SINGULAR_TOL = 1e-12


class CirculantSpec:
    """First column (c_0, …, c_{N−1}) of an N×N circulant matrix."""

    def __init__(self, first_column: ArrayLike) -> None:
        self.first_column = as_vector(first_column, "first column")

    @property
    def n(self) -> int:
        return self.first_column.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.first_column.imag == 0))

    def transpose(self) -> "CirculantSpec":
        """The circulant whose realization is the transpose of this one's: c'_m = c_{−m mod N}."""
        return CirculantSpec(np.roll(self.first_column[::-1], 1))

    def __repr__(self) -> str:
        return f"CirculantSpec(n={self.n})"


def binary_spec(n: int, support: int) -> CirculantSpec:
    """Ones in positions 0..support−1 of the first column, zeros elsewhere."""
    if not 0 < support < n:
        raise ValueError(f"support size must satisfy 0 < {support} < {n}")
    column = np.zeros(n)
    column[:support] = 1.0
    return CirculantSpec(column)


def realize(spec: CirculantSpec) -> ComplexMatrix:
    return scipy.linalg.circulant(spec.first_column)


def factors(spec: CirculantSpec) -> ComplexVector:
    """Σ_k c_k ω_j^k for j = 0..N−1."""
    n = spec.n
    # N·ifft(c)[j] = Σ_k c_k exp(2πi·jk/N)
    return n * np.fft.ifft(spec.first_column)


def determinant(spec: CirculantSpec) -> complex:
    return complex(np.prod(factors(spec)))


def _scale(spec: CirculantSpec) -> float:
    return max(1.0, float(np.sum(np.abs(spec.first_column))))


def _vanishing_factor(spec: CirculantSpec, tol: float):
    values = np.abs(factors(spec))
    j = int(np.argmin(values))
    if values[j] <= tol * _scale(spec):
        return j
    return None


def is_singular(spec: CirculantSpec, tol: float = SINGULAR_TOL) -> bool:
    """True when some factor vanishes relative to the row ℓ¹ norm."""
    return _vanishing_factor(spec, tol) is not None


def is_singular_binary(n: int, support: int) -> bool:
    """Singularity of the binary circulant with ``support`` leading ones: some 1 ≤ j ≤ N−1 has N | j·support."""
    if not 0 < support < n:
        raise ValueError(f"support size must satisfy 0 < {support} < {n}")
    for j in range(1, n):
        if (j * support) % n == 0:
            return True
    return False


def solve(spec: CirculantSpec, b: ArrayLike, tol: float = SINGULAR_TOL) -> np.ndarray:
    """Solve realize(spec)·ν = b by DFT diagonalization."""
    b = as_vector(b, "right-hand side")
    if b.size != spec.n:
        raise DimensionError(f"right-hand side of length {b.size} for a {spec.n}x{spec.n} circulant")
    j = _vanishing_factor(spec, tol)
    if j is not None:
        raise SingularMatrixError(f"singular circulant: factor j={j} vanishes", j=j)
    # C = F^{-1} diag(fft(c)) F
    solution = np.fft.ifft(np.fft.fft(b) / np.fft.fft(spec.first_column))
    if spec.is_real and np.all(b.imag == 0):
        return solution.real
    return solution
