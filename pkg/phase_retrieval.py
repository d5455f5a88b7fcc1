# phase_retrieval.py

"""
Recovery of signals modulo a global phase from fusion frame magnitudes ‖P_i x‖.

Reconstruction lifts x to the rank-one Hermitian matrix X = xx^*, for which the
squared measurements ν_i²‖P_i x‖² = ν_i² tr(P_i X) are linear. The linear system
is solved by least squares over the N² real coordinates of Hermitian matrices and
the solution is projected to rank one through its top eigenpair. A full-rank
system certifies that the measurement map is injective on phase classes.
"""

import hashlib
import logging
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from circulant import CirculantSpec, solve
from complex_core import ArrayLike, ComplexVector, as_matrix, as_vector
from errors import (
    DimensionError,
    InconsistentMeasurementsError,
    ModelMismatchError,
    SingularMatrixError,
    UncertifiedFrameError,
)
from fusion import FusionFrame, fusion_analysis, projection
from gabor import LatticePoint, full_lattice

# Configure logging for this module
logger = logging.getLogger("gaborfusion.phase_retrieval")
logger.setLevel(logging.INFO)

DEFAULT_RESIDUAL_RTOL = 5e-2
RANK_ONE_WARNING = 0.5
CLAMP_TOL = 1e-6
TIE_RTOL = 1e-9


class MeasurementSet:
    """Magnitudes m_i = ν_i‖P_i x‖ labelled by lattice point, stored squared.

    ``squared`` records which form ``values`` surfaces; files and the CLI use the
    unsquared form.
    """

    def __init__(
        self,
        squared_values: ArrayLike,
        labels: Sequence[LatticePoint],
        frame_id: str = "",
        squared: bool = False,
    ) -> None:
        values = np.asarray(squared_values, dtype=float)
        if values.ndim != 1:
            raise DimensionError("measurements must be a 1-D sequence")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("measurements must be finite and nonnegative")
        if len(labels) != values.size:
            raise DimensionError(f"{values.size} measurements for {len(labels)} labels")
        self.squared_values = values
        self.labels: List[LatticePoint] = [(int(k), int(l)) for k, l in labels]
        self.frame_id = frame_id
        self.squared = squared

    @classmethod
    def from_values(
        cls, values: ArrayLike, labels: Sequence[LatticePoint], frame_id: str = "", squared: bool = False
    ) -> "MeasurementSet":
        values = np.asarray(values, dtype=float)
        if np.any(values < 0):
            raise ValueError("measurements must be nonnegative")
        return cls(values if squared else values**2, labels, frame_id, squared)

    @property
    def values(self) -> np.ndarray:
        return self.squared_values if self.squared else np.sqrt(self.squared_values)

    def reorder(self, labels: Sequence[LatticePoint]) -> "MeasurementSet":
        """The same measurements listed in the given label order."""
        position = {label: i for i, label in enumerate(self.labels)}
        wanted = [(int(k), int(l)) for k, l in labels]
        if len(position) != len(self.labels) or sorted(position) != sorted(wanted):
            raise DimensionError("measurement labels do not match the frame's subspace labels")
        order = [position[label] for label in wanted]
        return MeasurementSet(self.squared_values[order], wanted, self.frame_id, self.squared)

    def __len__(self) -> int:
        return self.squared_values.size


class PhaseClass:
    """The orbit {c·x : |c| = 1}, held by its canonical representative."""

    def __init__(self, representative: ArrayLike) -> None:
        self.representative = canonicalize(representative)

    @classmethod
    def from_vector(cls, x: ArrayLike) -> "PhaseClass":
        return cls(x)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.representative)

    def distance(self, other: "PhaseClass") -> float:
        return mod_phase_distance(self.representative, other.representative)

    def __repr__(self) -> str:
        return f"PhaseClass(n={self.representative.size})"


class CertificateReport(NamedTuple):
    rank: int
    full_rank: int
    certified: bool

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "inconclusive"


class MagnitudeRecovery(NamedTuple):
    values: np.ndarray
    clamped: float
    i0: int


def canonicalize(x: ArrayLike) -> ComplexVector:
    """Rotate x so that its first entry of largest modulus is real and nonnegative."""
    x = as_vector(x)
    moduli = np.abs(x)
    if not np.any(moduli):
        return np.zeros_like(x)
    # moduli within rounding of the maximum count as tied; the lowest index wins
    idx = int(np.flatnonzero(moduli >= moduli.max() * (1 - TIE_RTOL))[0])
    return x * (np.conj(x[idx]) / moduli[idx])


def frame_fingerprint(F: FusionFrame) -> str:
    """Short hash of the projections and weights; independent of the chosen bases."""
    digest = hashlib.sha256()
    for weight, W in zip(F.weights, F.subspaces):
        digest.update(np.round(weight, 10).tobytes())
        digest.update((np.round(projection(W), 10) + 0.0).tobytes())
    return digest.hexdigest()[:16]


def measure(x: ArrayLike, F: FusionFrame, squared: bool = False) -> MeasurementSet:
    values = fusion_analysis(x, F)
    return MeasurementSet(values**2, F.labels(), frame_fingerprint(F), squared)


def mod_phase_distance(x: ArrayLike, y: ArrayLike) -> float:
    """min over |c| = 1 of ‖x − c·y‖, attained at c = ⟨x, y⟩/|⟨x, y⟩|."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"distance between vectors of length {x.size} and {y.size}")
    overlap = np.vdot(y, x)
    phase = overlap / abs(overlap) if overlap != 0 else 1.0
    # aligning first avoids the cancellation in ‖x‖² + ‖y‖² − 2|⟨x, y⟩|
    return float(np.linalg.norm(x - phase * y))


def divisibility_condition(n: int, n0: int) -> bool:
    """N does not divide j·n0 for any 1 ≤ j ≤ N−1."""
    if not 0 < n0 < n:
        raise ValueError(f"support length must satisfy 0 < {n0} < {n}")
    return all((j * n0) % n != 0 for j in range(1, n))


def hermitian_coordinates(H: np.ndarray) -> np.ndarray:
    """Orthonormal real coordinates of a Hermitian matrix: diagonal, then √2·Re and √2·Im of the upper triangle."""
    n = H.shape[0]
    upper = np.triu_indices(n, 1)
    return np.concatenate([H.diagonal().real, np.sqrt(2) * H[upper].real, np.sqrt(2) * H[upper].imag])


def hermitian_from_coordinates(coords: np.ndarray, n: int) -> np.ndarray:
    upper = np.triu_indices(n, 1)
    m = upper[0].size
    H = np.diag(coords[:n].astype(np.complex128))
    off = (coords[n : n + m] + 1j * coords[n + m :]) / np.sqrt(2)
    H[upper] = off
    H[(upper[1], upper[0])] = off.conj()
    return H


def lifted_operator(F: FusionFrame) -> np.ndarray:
    """Real L×N² matrix of X ↦ (ν_i² tr(P_i X))_i on Hermitian X."""
    return np.array([w**2 * hermitian_coordinates(projection(W)) for w, W in zip(F.weights, F.subspaces)])


def injectivity_certificate(F: FusionFrame) -> CertificateReport:
    """Rank of the lifted measurement map; full rank N² certifies injectivity, anything less is inconclusive."""
    n = F.ambient_dim
    rank = int(np.linalg.matrix_rank(lifted_operator(F)))
    report = CertificateReport(rank, n * n, rank == n * n)
    logger.debug(f"Lifted measurement map has rank {rank}/{n * n}: {report.verdict}")
    return report


def reconstruct(
    m: MeasurementSet, F: FusionFrame, residual_rtol: float = DEFAULT_RESIDUAL_RTOL
) -> PhaseClass:
    """Lifted least squares followed by rank-one projection."""
    n = F.ambient_dim
    if len(m) != len(F):
        raise DimensionError(f"{len(m)} measurements for a frame of {len(F)} subspaces")
    m = m.reorder(F.labels())
    if m.frame_id and m.frame_id != frame_fingerprint(F):
        logger.warning(f"Measurements carry frame id {m.frame_id}, which is not this frame's")

    lifted = lifted_operator(F)
    rank = int(np.linalg.matrix_rank(lifted))
    if rank < n * n:
        raise UncertifiedFrameError(
            f"lifted measurement map has rank {rank}/{n * n}; injectivity is not certified"
        )

    target = m.squared_values
    if not np.any(target):
        return PhaseClass(np.zeros(n, dtype=np.complex128))

    coords, *_ = np.linalg.lstsq(lifted, target, rcond=None)
    eigenvalues, eigenvectors = np.linalg.eigh(hermitian_from_coordinates(coords, n))
    top = float(eigenvalues[-1])
    if top <= 0:
        estimate = np.zeros(n, dtype=np.complex128)
    else:
        estimate = np.sqrt(top) * eigenvectors[:, -1]
        if n > 1 and eigenvalues[-2] / top > RANK_ONE_WARNING:
            logger.warning(f"Lifted solution is far from rank-one (λ2/λ1 = {eigenvalues[-2] / top:.3f})")

    residual = float(np.linalg.norm(fusion_analysis(estimate, F) ** 2 - target))
    if residual > residual_rtol * np.linalg.norm(target):
        raise InconsistentMeasurementsError("measurements are not consistent with any signal", residual)
    logger.debug(f"Reconstructed signal with residual {residual:.3e}")
    return PhaseClass(estimate)


def _lattice_grid(m: MeasurementSet) -> np.ndarray:
    n = int(round(np.sqrt(len(m))))
    if n * n != len(m) or sorted(m.labels) != full_lattice(n):
        raise DimensionError("magnitude recovery needs measurements over the full lattice Z_N x Z_N")
    grid = np.zeros((n, n))
    for (k, l), value in zip(m.labels, m.squared_values):
        grid[k, l] = value
    return grid


def validate_diagonal_model(
    F: FusionFrame, coeffs: ArrayLike, i0: int = 0, tol: float = 1e-8
) -> None:
    """Check that P_{0,0} = Σ_i c_i e_{i0+i} e_{i0+i}^*, i.e. that no cross terms enter ‖P_{k,ℓ}x‖²."""
    coeffs = np.asarray(coeffs, dtype=float)
    n = F.ambient_dim
    labels = F.labels()
    if (0, 0) not in labels:
        raise ModelMismatchError("frame has no subspace at lattice point (0, 0)")
    P = projection(F.subspaces[labels.index((0, 0))])
    expected = np.zeros(n)
    for i, c in enumerate(coeffs):
        expected[(i0 + i) % n] += c
    deviation = float(np.linalg.norm(P - np.diag(expected), "fro"))
    if deviation > tol:
        raise ModelMismatchError(f"diagonal model does not describe this frame (deviation {deviation:.3e})")


def recover_magnitudes(
    m: MeasurementSet,
    coeffs: ArrayLike,
    i0: int = 0,
    frame: Optional[FusionFrame] = None,
    diagonal_model: bool = False,
) -> MagnitudeRecovery:
    """Solve ‖P_{k,ℓ}x‖² = Σ_i c_i v_{k+i,ℓ} for v_{k,ℓ} = |⟨x, π(k, ℓ)e_{i0}⟩|², one circulant system per ℓ."""
    if not diagonal_model:
        raise ModelMismatchError("magnitude recovery requires the diagonal model (diagonal_model=True)")
    coeffs = np.asarray(coeffs, dtype=float)
    grid = _lattice_grid(m)
    n = grid.shape[0]
    n0 = coeffs.size
    if not 0 < n0 <= n:
        raise DimensionError(f"coefficient pattern of length {n0} does not fit in Z_{n}")
    if frame is not None:
        validate_diagonal_model(frame, coeffs, i0)
    if np.all(coeffs == 1) and (n0 == n or not divisibility_condition(n, n0)):
        raise SingularMatrixError(f"singular S: condition({n},{n0}) fails")

    pattern = np.zeros(n)
    pattern[:n0] = coeffs
    # row k of S is T_k applied to the pattern
    S = CirculantSpec(pattern).transpose()
    values = np.array([solve(S, grid[:, l]) for l in range(n)]).T

    lowest = float(values.min())
    if lowest < -CLAMP_TOL:
        raise ModelMismatchError(f"model mismatch: recovered magnitude {lowest:.3e} is negative")
    clamped = max(0.0, -lowest)
    if clamped > 0:
        logger.warning(f"Clamped negative magnitudes of size up to {clamped:.3e}")
    return MagnitudeRecovery(np.maximum(values, 0.0), clamped, i0)


def apply_left_inverse(S: ArrayLike, b: ArrayLike) -> np.ndarray:
    """ν with S·ν = b for a full-column-rank (possibly rectangular) S, via its least-squares left inverse."""
    real_input = np.isrealobj(S) and np.isrealobj(b)
    S = as_matrix(S, "S")
    b = np.asarray(b, dtype=np.complex128)
    if real_input:
        S, b = S.real, b.real
    if S.shape[0] != b.shape[0]:
        raise DimensionError(f"S has {S.shape[0]} rows but b has length {b.shape[0]}")
    rank = int(np.linalg.matrix_rank(S))
    if rank < S.shape[1]:
        raise SingularMatrixError(f"S has rank {rank} < {S.shape[1]} columns and no left inverse")
    solution, *_ = np.linalg.lstsq(S, b, rcond=None)
    return solution
