# complex_core.py

"""
Complex vector and matrix arithmetic with the conventions used across the package.

Vectors are 1-D ``complex128`` arrays indexed by Z_N, matrices are 2-D arrays.
The DFT here is the unnormalized forward transform
``x̂(m) = Σ_n x(n) exp(-2πi·mn/N)`` with the (1/N)-normalized inverse; the
row-wise matrix DFT in ``matrix_gabor`` uses the unitary 1/√N scaling instead.
"""

import logging
from typing import Iterable, Union

import numpy as np

from errors import DimensionError

# Configure logging for this module
logger = logging.getLogger("gaborfusion.complex_core")
logger.setLevel(logging.INFO)

ComplexVector = np.ndarray
ComplexMatrix = np.ndarray
ArrayLike = Union[np.ndarray, Iterable[complex]]

DEFAULT_RTOL = 1e-10


def as_vector(x: ArrayLike, name: str = "vector") -> ComplexVector:
    """Coerce to a finite, non-empty complex vector."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"{name} must be a non-empty 1-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} has non-finite entries")
    return arr


def as_matrix(X: ArrayLike, name: str = "matrix", square: bool = False) -> ComplexMatrix:
    """Coerce to a finite complex matrix, optionally requiring it to be square."""
    arr = np.asarray(X, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} has non-finite entries")
    return arr


def dft(x: ArrayLike) -> ComplexVector:
    """Unnormalized DFT, x̂(m) = Σ_n x(n)·exp(−2πi·mn/N)."""
    return np.fft.fft(as_vector(x))


def idft(x_hat: ArrayLike) -> ComplexVector:
    """Inverse of ``dft``: x(n) = (1/N) Σ_m x̂(m)·exp(2πi·mn/N)."""
    return np.fft.ifft(as_vector(x_hat))


def inner(x: ArrayLike, y: ArrayLike) -> complex:
    """⟨x, y⟩ = Σ_n x(n)·conj(y(n)), linear in the first argument."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"inner product of vectors of length {x.size} and {y.size}")
    return complex(np.vdot(y, x))


def norm(x: ArrayLike) -> float:
    return float(np.linalg.norm(as_vector(x)))


def matrix_inner(X: ArrayLike, Y: ArrayLike) -> ComplexMatrix:
    """Matrix-valued inner product ⟨X, Y⟩ = X·Y^* of two N×N matrices."""
    X = as_matrix(X, "X", square=True)
    Y = as_matrix(Y, "Y", square=True)
    if X.shape != Y.shape:
        raise DimensionError(f"matrix inner product of shapes {X.shape} and {Y.shape}")
    return X @ Y.conj().T


def frobenius_norm(X: ArrayLike) -> float:
    return float(np.linalg.norm(as_matrix(X), "fro"))


def cyclic_convolve(x: ArrayLike, y: ArrayLike) -> ComplexVector:
    """Cyclic convolution (x∗y)(n) = Σ_m x(m)·y(n−m mod N), evaluated directly."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"convolution of vectors of length {x.size} and {y.size}")
    n = x.size
    out = np.zeros(n, dtype=np.complex128)
    for m in range(n):
        if x[m] != 0:
            out += x[m] * np.roll(y, m)
    return out


def frame_operator(rows: ArrayLike) -> ComplexMatrix:
    """Frame operator Σ_r f_r f_r^* of the vectors stacked as rows."""
    F = as_matrix(rows, "frame vectors")
    # (f f^*)[a, b] = f[a]·conj(f[b])
    return F.T @ F.conj()
