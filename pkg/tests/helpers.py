import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gabor import tf_shift

EXAMPLE_N = 7

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def delta(n, i):
    v = np.zeros(n, dtype=np.complex128)
    v[i] = 1.0
    return v


def indicator(n, positions):
    v = np.zeros(n, dtype=np.complex128)
    v[list(positions)] = 1.0 / np.sqrt(len(positions))
    return v


def example_windows():
    return np.array([indicator(EXAMPLE_N, [1, 2, 4]), delta(EXAMPLE_N, 3)])


def random_complex(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_orthonormal_rows(rng, m, n):
    q, _ = np.linalg.qr(random_complex(rng, n, n))
    return q[:, :m].T.copy()


def tf_shift_matrix(n, k, l):
    return np.array([tf_shift(e, k, l) for e in np.eye(n)]).T


@st.composite
def complex_vectors(draw, n):
    parts = draw(arrays(np.float64, (2, n), elements=finite))
    return parts[0] + 1j * parts[1]


@st.composite
def complex_matrices(draw, n):
    parts = draw(arrays(np.float64, (2, n, n), elements=finite))
    return parts[0] + 1j * parts[1]
