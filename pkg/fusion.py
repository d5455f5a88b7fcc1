# fusion.py

"""
Fusion frames over C^N: subspaces, projections, frame bounds and the two tight constructions.

A subspace is stored as a matrix whose rows are an orthonormal basis. The
projection onto it is P = Σ_r b_r b_r^*, so P x = Σ_r ⟨x, b_r⟩ b_r.
Weights ν_i enter the frame operator as Σ ν_i² P_i.
"""

import logging
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from complex_core import ArrayLike, ComplexMatrix, as_matrix, as_vector
from complex_core import frame_operator as vector_frame_operator
from errors import DimensionError, HypothesisError
from gabor import LatticePoint, check_lattice, full_lattice, tf_shift

# Configure logging for this module
logger = logging.getLogger("gaborfusion.fusion")
logger.setLevel(logging.INFO)

DROP_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
HYPOTHESIS_TOL = 1e-8


class Subspace:
    """A subspace of C^N given by an orthonormal row basis."""

    def __init__(self, basis: ArrayLike) -> None:
        basis = as_matrix(basis, "subspace basis")
        m, n = basis.shape
        if m > n:
            raise DimensionError(f"{m} basis rows cannot be orthonormal in C^{n}")
        gram = basis.conj() @ basis.T
        if np.linalg.norm(gram - np.eye(m), "fro") > ORTHONORMAL_TOL * max(1.0, np.sqrt(m)):
            raise DimensionError("subspace basis rows are not orthonormal")
        self.basis = basis

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


class FusionFrame:
    """An ordered family of subspaces with positive weights (default 1)."""

    def __init__(self, subspaces: Sequence[Subspace], weights: Optional[ArrayLike] = None) -> None:
        if not subspaces:
            raise DimensionError("a fusion frame needs at least one subspace")
        dims = {w.ambient_dim for w in subspaces}
        if len(dims) != 1:
            raise DimensionError(f"subspaces live in different ambient dimensions {sorted(dims)}")
        self.subspaces: List[Subspace] = list(subspaces)
        if weights is None:
            self.weights = np.ones(len(self.subspaces))
        else:
            self.weights = np.asarray(weights, dtype=float)
            if self.weights.shape != (len(self.subspaces),):
                raise DimensionError("one weight per subspace is required")
            if not np.all(self.weights > 0):
                raise DimensionError("fusion frame weights must be positive")

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].ambient_dim

    def __len__(self) -> int:
        return len(self.subspaces)

    def labels(self) -> List[LatticePoint]:
        """Index labels of the subspaces; plain frames are labelled (i, 0)."""
        return [(i, 0) for i in range(len(self))]


class GaborFusionFrame(FusionFrame):
    """The subspaces W_{k,ℓ} = span{π(k, ℓ)y_j}_j of a window stack Y over a lattice."""

    def __init__(
        self,
        subspaces: Sequence[Subspace],
        window: ArrayLike,
        lattice: Sequence[LatticePoint],
        tight_bound: float,
        weights: Optional[ArrayLike] = None,
    ) -> None:
        super().__init__(subspaces, weights)
        self.window = as_matrix(window, "window stack")
        self.lattice: List[LatticePoint] = check_lattice(lattice, self.ambient_dim)
        if len(self.lattice) != len(self.subspaces):
            raise DimensionError("one lattice point per subspace is required")
        self.tight_bound = float(tight_bound)

    def labels(self) -> List[LatticePoint]:
        return list(self.lattice)

    @property
    def expected_constant(self) -> float:
        """N‖Y‖_F²/B, the tight constant on the full lattice."""
        return self.ambient_dim * float(np.linalg.norm(self.window, "fro") ** 2) / self.tight_bound


class FrameBounds(NamedTuple):
    lower: float
    upper: float
    is_fusion_frame: bool


def orthonormalize(vectors: ArrayLike, drop_tol: float = DROP_TOL) -> Subspace:
    """Modified Gram–Schmidt with one re-orthogonalization pass; nearly dependent vectors are dropped."""
    vectors = as_matrix(vectors, "vectors")
    basis: List[np.ndarray] = []
    for v in vectors:
        scale = np.linalg.norm(v)
        if scale == 0:
            continue
        w = v.copy()
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        residual = np.linalg.norm(w)
        if residual <= drop_tol * scale:
            logger.debug(f"Dropping dependent vector (residual {residual:.2e})")
            continue
        basis.append(w / residual)
    if not basis:
        raise HypothesisError("orthonormalize", "all input vectors are zero")
    return Subspace(np.array(basis))


def projection(W: Subspace) -> ComplexMatrix:
    return W.basis.T @ W.basis.conj()


def frame_operator(F: FusionFrame) -> ComplexMatrix:
    """Σ ν_i² P_i."""
    n = F.ambient_dim
    S = np.zeros((n, n), dtype=np.complex128)
    for weight, W in zip(F.weights, F.subspaces):
        S += weight**2 * projection(W)
    return S


def fusion_analysis(x: ArrayLike, F: FusionFrame) -> np.ndarray:
    """The values ν_i·‖P_i x‖ in subspace order."""
    x = as_vector(x, "signal")
    if x.size != F.ambient_dim:
        raise DimensionError(f"signal length {x.size} does not match frame dimension {F.ambient_dim}")
    # ‖P_i x‖ is the norm of the coefficients ⟨x, b_r⟩ in an orthonormal basis
    return np.array([w * np.linalg.norm(W.basis.conj() @ x) for w, W in zip(F.weights, F.subspaces)])


def frame_bounds(F: FusionFrame, tol: float = 1e-10) -> FrameBounds:
    eigenvalues = np.linalg.eigvalsh(frame_operator(F))
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
    if lower <= tol * max(upper, 1.0):
        logger.warning(f"Family of {len(F)} subspaces does not span C^{F.ambient_dim}: not a fusion frame")
        return FrameBounds(0.0, upper, False)
    return FrameBounds(lower, upper, True)


def is_tight(F: FusionFrame, tol: float = 1e-10) -> Optional[float]:
    """The tight constant A = Σ ν_i² dim W_i / N when Σ ν_i² P_i = A·I within tolerance, else None."""
    n = F.ambient_dim
    bound = float(sum(w**2 * W.dim for w, W in zip(F.weights, F.subspaces))) / n
    deviation = float(np.linalg.norm(frame_operator(F) - bound * np.eye(n), "fro"))
    if deviation > tol * bound * np.sqrt(n):
        logger.debug(f"Not tight: deviation {deviation:.3e} from {bound:.6g}·I")
        return None
    return bound


def is_tight_vector_frame(rows: ArrayLike, tol: float = HYPOTHESIS_TOL) -> Optional[float]:
    """B when the rows form a B-tight frame for their own span, else None."""
    rows = as_matrix(rows, "frame vectors")
    span = orthonormalize(rows)
    bound = float(np.linalg.norm(rows, "fro") ** 2) / span.dim
    deviation = float(np.linalg.norm(vector_frame_operator(rows) - bound * projection(span), "fro"))
    if deviation > tol * bound * np.sqrt(span.dim):
        return None
    return bound


def subspaces_equal(V: Subspace, W: Subspace, tol: float = HYPOTHESIS_TOL) -> bool:
    if V.ambient_dim != W.ambient_dim:
        return False
    return float(np.linalg.norm(projection(V) - projection(W), "fro")) <= tol


def extend(F: FusionFrame, W: Subspace, weight: float = 1.0) -> FusionFrame:
    """Append one subspace; measurement injectivity of F carries over to the result."""
    return FusionFrame(F.subspaces + [W], np.append(F.weights, weight))


def _check_seed_tightness(rows: np.ndarray, B: float, hypothesis: str, tol: float) -> None:
    bound = is_tight_vector_frame(rows, tol)
    if bound is None:
        raise HypothesisError(hypothesis, "seed vectors are not a tight frame for their span")
    if abs(bound - B) > tol * max(abs(B), 1.0):
        raise HypothesisError(hypothesis, f"seed vectors are {bound:.6g}-tight, not {B:.6g}-tight")


def build_from_coisometries(
    seed: ArrayLike, U: Sequence[ArrayLike], B: float, tol: float = HYPOTHESIS_TOL
) -> FusionFrame:
    """Tight fusion frame {span{U_i f_j}_j}_i from a B-tight seed and coisometries U_i."""
    seed = as_matrix(seed, "seed vectors")
    n = seed.shape[1]
    if len(U) == 0:
        raise HypothesisError("coisometry", "at least one operator is required")
    _check_seed_tightness(seed, B, "seed tightness", tol)

    operators = []
    for i, op in enumerate(U):
        op = as_matrix(op, "operator", square=True)
        if op.shape != (n, n):
            raise DimensionError(f"operator {i} has shape {op.shape}, expected ({n}, {n})")
        if np.linalg.norm(op @ op.conj().T - np.eye(n), "fro") > tol * np.sqrt(n):
            raise HypothesisError("coisometry violated", "U U^* != I", index=i)
        operators.append(op)

    # images[i, j] = U_i f_j
    images = np.einsum("iab,jb->ija", np.array(operators), seed)

    constants = []
    for j in range(seed.shape[0]):
        family = images[:, j, :]
        S = vector_frame_operator(family)
        bound = float(np.trace(S).real) / n
        if np.linalg.norm(S - bound * np.eye(n), "fro") > tol * max(bound, 1.0) * np.sqrt(n):
            raise HypothesisError("orbit tightness", "{U_i f_j}_i is not a tight frame for C^N", index=j)
        constants.append(bound)

    subspaces = []
    for i, op in enumerate(operators):
        W = orthonormalize(images[i])
        # U_i^* has to act isometrically on W_i for {U_i f_j}_j to stay B-tight there
        pulled_back = op.conj().T @ W.basis.T
        if np.linalg.norm(pulled_back.conj().T @ pulled_back - np.eye(W.dim), "fro") > tol * np.sqrt(W.dim):
            raise HypothesisError("adjoint isometry on subspace", "U_i^* is not isometric on W_i", index=i)
        subspaces.append(W)

    frame = FusionFrame(subspaces)
    expected = sum(constants) / B
    constant = is_tight(frame, tol)
    if constant is None or abs(constant - expected) > tol * expected:
        raise HypothesisError("fusion tightness", f"expected constant {expected:.6g}, got {constant}")
    logger.info(f"Built {len(frame)} subspaces from coisometries, tight constant {constant:.6g}")
    return frame


def build_gabor_fusion(
    Y: ArrayLike,
    B: float,
    lattice: Optional[Sequence[LatticePoint]] = None,
    tol: float = HYPOTHESIS_TOL,
) -> GaborFusionFrame:
    """W_{k,ℓ} = span{π(k, ℓ)y_j}_j over the lattice (default Z_N × Z_N)."""
    Y = as_matrix(Y, "window stack")
    rows = Y[np.linalg.norm(Y, axis=1) > 0]
    if rows.shape[0] == 0:
        raise HypothesisError("window tightness", "window stack has no nonzero rows")
    n = Y.shape[1]
    _check_seed_tightness(rows, B, "window tightness", tol)

    points = full_lattice(n) if lattice is None else check_lattice(lattice, n)
    base = orthonormalize(rows)
    # π(k, ℓ) is unitary, so shifting an orthonormal basis of W_{0,0} gives one of W_{k,ℓ}
    subspaces = [Subspace(np.array([tf_shift(b, k, l) for b in base.basis])) for k, l in points]
    frame = GaborFusionFrame(subspaces, rows, points, B)
    logger.info(
        f"Built Gabor fusion frame: N={n}, {len(rows)} window rows, {len(points)} subspaces of dim {base.dim}"
    )
    if lattice is None:
        constant = is_tight(frame, tol)
        if constant is None or abs(constant - frame.expected_constant) > tol * frame.expected_constant:
            raise HypothesisError(
                "window tightness", f"expected constant {frame.expected_constant:.6g}, got {constant}"
            )
    return frame
