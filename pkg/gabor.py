# gabor.py

"""
Time-frequency shifts on C^N, the short-time Fourier transform and Gabor frame checks.

Conventions:
    (T_k x)(n) = x(n − k mod N)
    (M_ℓ x)(n) = exp(−2πi·ℓn/N)·x(n)      (negative exponent)
    π(k, ℓ) = M_ℓ T_k

Comparisons with libraries using the positive modulation sign differ by complex
conjugation of the STFT. T_k M_ℓ and M_ℓ T_k differ by the unimodular factor
exp(2πi·kℓ/N), which changes neither spans nor magnitudes.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from complex_core import ArrayLike, ComplexMatrix, ComplexVector, as_matrix, as_vector, frame_operator
from errors import DimensionError, HypothesisError

# Configure logging for this module
logger = logging.getLogger("gaborfusion.gabor")
logger.setLevel(logging.INFO)

LatticePoint = Tuple[int, int]


def full_lattice(n: int) -> List[LatticePoint]:
    """All of Z_N × Z_N in row-major (k, ℓ) order."""
    return [(k, l) for k in range(n) for l in range(n)]


def check_lattice(points: Sequence[LatticePoint], n: int) -> List[LatticePoint]:
    """Lattice points as int pairs; rejects an empty, repeated or out-of-range set."""
    points = [(int(k), int(l)) for k, l in points]
    if not points:
        raise DimensionError("lattice must not be empty")
    if len(set(points)) != len(points):
        raise DimensionError("lattice points must be unique")
    if any(not (0 <= k < n and 0 <= l < n) for k, l in points):
        raise DimensionError(f"lattice components must lie in 0..{n - 1}")
    return points


def _harmonic(n: int, l: int) -> ComplexVector:
    return np.exp(-2j * np.pi * (l % n) * np.arange(n) / n)


def translate(x: ArrayLike, k: int) -> ComplexVector:
    x = as_vector(x)
    return np.roll(x, k % x.size)


def modulate(x: ArrayLike, l: int) -> ComplexVector:
    x = as_vector(x)
    return _harmonic(x.size, l) * x


def tf_shift(x: ArrayLike, k: int, l: int) -> ComplexVector:
    """π(k, ℓ)x = M_ℓ T_k x."""
    return modulate(translate(x, k), l)


class GaborSystem:
    """A window φ together with a lattice Λ ⊆ Z_N × Z_N."""

    def __init__(self, window: ArrayLike, lattice: Optional[Iterable[LatticePoint]] = None) -> None:
        self.window = as_vector(window, "window")
        if np.linalg.norm(self.window) == 0:
            raise HypothesisError("window", "window must be nonzero")
        n = self.window.size
        points = full_lattice(n) if lattice is None else check_lattice(list(lattice), n)
        self.lattice: List[LatticePoint] = points

    @property
    def n(self) -> int:
        return self.window.size

    @property
    def is_full(self) -> bool:
        return len(self.lattice) == self.n * self.n

    def atoms(self) -> ComplexMatrix:
        return gabor_atoms(self.window, self.lattice)

    def frame_operator(self) -> ComplexMatrix:
        return frame_operator(self.atoms())

    def frame_bounds(self) -> Tuple[float, float]:
        eigenvalues = np.linalg.eigvalsh(self.frame_operator())
        return max(float(eigenvalues[0]), 0.0), float(eigenvalues[-1])


def gabor_atoms(window: ArrayLike, lattice: Optional[Sequence[LatticePoint]] = None) -> ComplexMatrix:
    """Rows π(k, ℓ)φ for each lattice point, in lattice order."""
    window = as_vector(window, "window")
    points = full_lattice(window.size) if lattice is None else lattice
    return np.array([tf_shift(window, k, l) for k, l in points])


def _stft(x: ComplexVector, window: ComplexVector) -> ComplexMatrix:
    n = x.size
    atoms = gabor_atoms(window).reshape(n, n, n)
    # V[k, ℓ] = Σ_n x(n)·conj(π(k, ℓ)φ(n))
    return atoms.conj() @ x


def _check_pair(x: ArrayLike, window: ArrayLike) -> Tuple[ComplexVector, ComplexVector]:
    x = as_vector(x, "signal")
    window = as_vector(window, "window")
    if x.size != window.size:
        raise DimensionError(f"signal length {x.size} does not match window length {window.size}")
    if np.linalg.norm(window) == 0:
        raise HypothesisError("window", "window must be nonzero")
    return x, window


def stft(x: ArrayLike, window: ArrayLike) -> ComplexMatrix:
    """V_φx(k, ℓ) = ⟨x, π(k, ℓ)φ⟩ as an N×N array indexed [k, ℓ]."""
    x, window = _check_pair(x, window)
    return _stft(x, window)


def stft_inverse(V: ArrayLike, window: ArrayLike) -> ComplexVector:
    """x = (1/(N‖φ‖²)) Σ_{k,ℓ} V(k, ℓ)·π(k, ℓ)φ."""
    window = as_vector(window, "window")
    n = window.size
    V = as_matrix(V, "STFT coefficients")
    if V.shape != (n, n):
        raise DimensionError(f"STFT array must be {n}x{n}, got {V.shape}")
    energy = float(np.vdot(window, window).real)
    if energy == 0:
        raise HypothesisError("window", "window must be nonzero")
    atoms = gabor_atoms(window).reshape(n, n, n)
    return np.tensordot(V, atoms, axes=([0, 1], [0, 1])) / (n * energy)


def gabor_frame_constant(window: ArrayLike, tol: float = 1e-9) -> float:
    """Verify that the full-lattice Gabor system is A-tight and return A (= N‖φ‖²)."""
    system = GaborSystem(window)
    S = system.frame_operator()
    n = system.n
    bound = float(np.trace(S).real) / n
    deviation = float(np.linalg.norm(S - bound * np.eye(n), "fro"))
    if deviation > tol * bound * np.sqrt(n):
        raise HypothesisError(
            "Gabor tightness", f"frame operator deviates from {bound:.6g}·I by {deviation:.3e}"
        )
    logger.debug(f"Gabor frame of length {n} is {bound:.6g}-tight (deviation {deviation:.2e})")
    return bound
