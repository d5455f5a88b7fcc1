# matrix_gabor.py

"""
Matrix-valued time-frequency analysis on C^{N×N}.

A matrix is read as a stack of N row vectors in C^N. Translation, modulation,
the unitary DFT and the involution act on every row; the circular convolution
treats the matrix as a function on Z_N × Z_N, with the row index as the outer
group coordinate.
"""

import logging

import numpy as np

from complex_core import ArrayLike, ComplexMatrix, as_matrix, as_vector, cyclic_convolve
from errors import DimensionError
from gabor import _harmonic, _stft

# Configure logging for this module
logger = logging.getLogger("gaborfusion.matrix_gabor")
logger.setLevel(logging.INFO)


def tilde_translate(X: ArrayLike, l: int) -> ComplexMatrix:
    """T̃_ℓ: applies T_ℓ to every row."""
    X = as_matrix(X, square=True)
    return np.roll(X, l % X.shape[1], axis=1)


def tilde_modulate(X: ArrayLike, l: int) -> ComplexMatrix:
    """M̃_ℓ: pointwise product of every row with exp(−2πi·ℓn/N)."""
    X = as_matrix(X, square=True)
    return X * _harmonic(X.shape[1], l)[np.newaxis, :]


def matrix_tf_shift(X: ArrayLike, k: int, l: int) -> ComplexMatrix:
    """π(k, ℓ)X = M̃_ℓ T̃_k X."""
    return tilde_modulate(tilde_translate(X, k), l)


def matrix_convolve(X: ArrayLike, Y: ArrayLike) -> ComplexMatrix:
    """Row j of X∗Y is Σ_i x_i ∗ y_{(j−i) mod N}."""
    X = as_matrix(X, "X", square=True)
    Y = as_matrix(Y, "Y", square=True)
    if X.shape != Y.shape:
        raise DimensionError(f"convolution of shapes {X.shape} and {Y.shape}")
    n = X.shape[0]
    out = np.zeros_like(X)
    for j in range(n):
        for i in range(n):
            if np.any(X[i]) and np.any(Y[(j - i) % n]):
                out[j] += cyclic_convolve(X[i], Y[(j - i) % n])
    return out


def matrix_involution(X: ArrayLike) -> ComplexMatrix:
    """Row i becomes x_i^* with x_i^*(ℓ) = conj(x_i(N−ℓ mod N))."""
    X = as_matrix(X)
    return np.roll(X[:, ::-1], 1, axis=1).conj()


def matrix_dft(X: ArrayLike) -> ComplexMatrix:
    """Unitary DFT (1/√N scaling) of every row."""
    return np.fft.fft(as_matrix(X, square=True), axis=1, norm="ortho")


def matrix_idft(X_hat: ArrayLike) -> ComplexMatrix:
    return np.fft.ifft(as_matrix(X_hat, square=True), axis=1, norm="ortho")


def group_dft(X: ArrayLike) -> ComplexMatrix:
    """Unnormalized DFT over both coordinates of Z_N × Z_N; turns ``matrix_convolve`` into a product."""
    return np.fft.fft2(as_matrix(X, square=True))


def embed_signal(x: ArrayLike) -> ComplexMatrix:
    """X̃ = (x, 0, …, 0): the signal as the first row of an N×N matrix."""
    x = as_vector(x)
    X = np.zeros((x.size, x.size), dtype=np.complex128)
    X[0] = x
    return X


def embed_subspace(basis: ArrayLike) -> ComplexMatrix:
    """N×N matrix whose first M rows are the given basis and the rest zero."""
    basis = as_matrix(basis, "basis")
    m, n = basis.shape
    if m > n:
        raise DimensionError(f"{m} basis rows do not fit in C^{n}")
    X = np.zeros((n, n), dtype=np.complex128)
    X[:m] = basis
    return X


def gabor_fusion_transform(x: ArrayLike, Y: ArrayLike) -> np.ndarray:
    """V_Y x(k, ℓ) = (V_{y_0}x(k, ℓ), …, V_{y_{N−1}}x(k, ℓ)), returned with shape (N, N, N) as [k, ℓ, row]."""
    x = as_vector(x, "signal")
    Y = as_matrix(Y, "window stack", square=True)
    if Y.shape[1] != x.size:
        raise DimensionError(f"signal length {x.size} does not match window stack {Y.shape}")
    n = x.size
    out = np.zeros((n, n, n), dtype=np.complex128)
    for j, row in enumerate(Y):
        if np.any(row):
            out[:, :, j] = _stft(x, row)
    return out
