import numpy as np
import pytest

from errors import DimensionError, HypothesisError
from fusion import (
    FusionFrame,
    GaborFusionFrame,
    Subspace,
    build_from_coisometries,
    build_gabor_fusion,
    extend,
    frame_bounds,
    frame_operator,
    fusion_analysis,
    is_tight,
    is_tight_vector_frame,
    orthonormalize,
    projection,
    subspaces_equal,
)
from helpers import delta, example_windows, random_complex, random_orthonormal_rows, tf_shift_matrix


def coordinate_lines(n):
    return FusionFrame([Subspace([delta(n, i)]) for i in range(n)])


def test_orthonormalize_keeps_orthonormal_input():
    W = orthonormalize([delta(4, 0), delta(4, 1)])
    assert W.dim == 2
    np.testing.assert_allclose(W.basis, [delta(4, 0), delta(4, 1)])

    W = orthonormalize(example_windows())
    assert W.dim == 2
    np.testing.assert_allclose(W.basis, example_windows(), atol=1e-12)


def test_orthonormalize_drops_dependent_vectors(rng):
    x = random_complex(rng, 5)
    W = orthonormalize([x, 2 * x, np.zeros(5)])
    assert W.dim == 1
    np.testing.assert_allclose(projection(W) @ x, x, atol=1e-12)


def test_orthonormalize_rejects_all_zero():
    with pytest.raises(HypothesisError):
        orthonormalize(np.zeros((2, 3)))


def test_subspace_validation():
    with pytest.raises(DimensionError):
        Subspace([[1, 1, 0]])
    with pytest.raises(DimensionError):
        Subspace(np.eye(3, 2).T.repeat(2, axis=0))


def test_fusion_frame_validation():
    with pytest.raises(DimensionError):
        FusionFrame([])
    with pytest.raises(DimensionError):
        FusionFrame([Subspace([delta(2, 0)]), Subspace([delta(3, 0)])])
    with pytest.raises(DimensionError):
        FusionFrame([Subspace([delta(2, 0)])], weights=[-1.0])


def test_projection_examples(example_frame):
    np.testing.assert_allclose(projection(Subspace(np.eye(4))), np.eye(4))
    np.testing.assert_allclose(projection(Subspace([delta(3, 0)])), np.diag([1, 0, 0]))

    P = projection(example_frame.subspaces[0])
    np.testing.assert_allclose(P @ P, P, atol=1e-12)
    assert np.trace(P).real == pytest.approx(2)
    assert np.linalg.matrix_rank(P) == 2


def test_fusion_analysis_examples(rng, example_frame):
    assert not np.any(fusion_analysis(np.zeros(7), example_frame))

    x = np.array([3.0, 4.0, 0, 0])
    F = FusionFrame([Subspace([delta(4, 0), delta(4, 1)]), Subspace([delta(4, 2), delta(4, 3)])])
    np.testing.assert_allclose(fusion_analysis(x, F), [5, 0])

    values = fusion_analysis(delta(7, 3), example_frame)
    assert example_frame.labels()[0] == (0, 0)
    assert values[0] == pytest.approx(1)


def test_fusion_analysis_applies_weights():
    F = FusionFrame([Subspace([delta(2, 0)]), Subspace([delta(2, 1)])], weights=[2.0, 3.0])
    np.testing.assert_allclose(fusion_analysis([1, 1], F), [2, 3])
    np.testing.assert_allclose(frame_operator(F), np.diag([4, 9]))


def test_fusion_analysis_rejects_wrong_length(example_frame):
    with pytest.raises(DimensionError):
        fusion_analysis(np.ones(6), example_frame)


def test_frame_bounds_examples(example_frame):
    bounds = frame_bounds(coordinate_lines(5))
    assert (bounds.lower, bounds.upper) == pytest.approx((1, 1))
    assert bounds.is_fusion_frame

    lines = coordinate_lines(5)
    doubled = FusionFrame(lines.subspaces * 2)
    assert tuple(frame_bounds(doubled)[:2]) == pytest.approx((2, 2))

    bounds = frame_bounds(example_frame)
    assert (bounds.lower, bounds.upper) == pytest.approx((14, 14))


def test_frame_bounds_of_non_spanning_family():
    F = FusionFrame([Subspace([delta(3, 0)]), Subspace([delta(3, 1)])])
    bounds = frame_bounds(F)
    assert not bounds.is_fusion_frame
    assert bounds.lower == 0
    assert bounds.upper == pytest.approx(1)


def test_is_tight_examples(example_frame):
    assert is_tight(coordinate_lines(4)) == pytest.approx(1)
    assert is_tight(FusionFrame([Subspace([delta(2, 0)]), Subspace([delta(2, 0)])])) is None
    assert is_tight(example_frame) == pytest.approx(14, abs=1e-10)


@pytest.mark.parametrize("m, n", [(1, 4), (2, 5), (3, 6)])
def test_gabor_construction_constant(rng, m, n):
    Y = random_orthonormal_rows(rng, m, n)
    F = build_gabor_fusion(Y, 1.0)
    assert len(F) == n * n
    assert all(W.dim == m for W in F.subspaces)
    assert is_tight(F) == pytest.approx(n * m, rel=1e-10)
    assert F.expected_constant == pytest.approx(n * m)


def test_example_construction(example_frame):
    assert len(example_frame) == 49
    assert all(W.dim == 2 for W in example_frame.subspaces)
    assert example_frame.expected_constant == pytest.approx(14)
    assert example_frame.labels()[8] == (1, 1)


def test_delta_window_gives_classical_gabor_lines():
    F = build_gabor_fusion([delta(7, 0)], 1.0)
    assert len(F) == 49
    assert all(W.dim == 1 for W in F.subspaces)
    assert is_tight(F) == pytest.approx(7)


def test_repeated_rows_are_judged_by_declared_bound():
    phi = delta(5, 2)
    with pytest.raises(HypothesisError, match="window tightness"):
        build_gabor_fusion([phi, phi], 1.0)
    F = build_gabor_fusion([phi, phi], 2.0)
    assert all(W.dim == 1 for W in F.subspaces)
    assert is_tight(F) == pytest.approx(5)


def test_zero_window_stack_is_rejected():
    with pytest.raises(HypothesisError, match="window tightness"):
        build_gabor_fusion(np.zeros((2, 4)), 1.0)


def test_zero_rows_are_ignored():
    Y = np.zeros((4, 4), dtype=complex)
    Y[0] = delta(4, 1)
    F = build_gabor_fusion(Y, 1.0)
    assert F.window.shape == (1, 4)
    assert is_tight(F) == pytest.approx(4)


def test_partial_lattice_skips_tightness_check():
    F = build_gabor_fusion([delta(4, 0)], 1.0, lattice=[(0, 0), (1, 0)])
    assert F.labels() == [(0, 0), (1, 0)]
    assert is_tight(F) is None


def test_coisometry_construction_matches_gabor_construction(example_frame):
    n = 7
    operators = [tf_shift_matrix(n, k, l) for k, l in example_frame.labels()]
    F = build_from_coisometries(example_windows(), operators, 1.0)
    for V, W in zip(F.subspaces, example_frame.subspaces):
        assert subspaces_equal(V, W, tol=1e-10)
    assert is_tight(F) == pytest.approx(is_tight(example_frame))


def test_cyclic_shifts_of_delta_give_orthonormal_lines():
    operators = [tf_shift_matrix(5, k, 0) for k in range(5)]
    F = build_from_coisometries([delta(5, 0)], operators, 1.0)
    assert is_tight(F) == pytest.approx(1)


def test_contraction_is_not_a_coisometry():
    with pytest.raises(HypothesisError, match="coisometry violated") as info:
        build_from_coisometries([delta(3, 0)], [0.5 * np.eye(3)], 1.0)
    assert info.value.index == 0


def test_non_tight_seed_is_rejected():
    with pytest.raises(HypothesisError, match="seed tightness"):
        build_from_coisometries([delta(3, 0), delta(3, 0) + delta(3, 1)], [np.eye(3)], 1.0)


def test_orbit_that_is_not_tight_is_rejected():
    with pytest.raises(HypothesisError, match="orbit tightness") as info:
        build_from_coisometries([delta(3, 0)], [np.eye(3)], 1.0)
    assert info.value.index == 0


def test_is_tight_vector_frame():
    assert is_tight_vector_frame(np.eye(3)[:2]) == pytest.approx(1)
    assert is_tight_vector_frame([delta(3, 0), delta(3, 0) + delta(3, 1)]) is None
    mercedes = np.array([[np.cos(a), np.sin(a)] for a in (0, 2 * np.pi / 3, 4 * np.pi / 3)])
    assert is_tight_vector_frame(mercedes) == pytest.approx(1.5)


def test_subspaces_equal_ignores_choice_of_basis(rng):
    basis = random_orthonormal_rows(rng, 2, 5)
    q, _ = np.linalg.qr(random_complex(rng, 2, 2))
    assert subspaces_equal(Subspace(basis), Subspace(q @ basis))
    assert not subspaces_equal(Subspace(basis[:1]), Subspace(basis[1:]))


def test_extend_appends_a_subspace(example_frame):
    G = extend(example_frame, Subspace(np.eye(7)), weight=2.0)
    assert len(G) == 50
    assert G.weights[-1] == 2.0
    assert is_tight(G) == pytest.approx(18)


def test_is_tight_ignores_subspace_order(rng, example_frame):
    order = rng.permutation(len(example_frame))
    shuffled = FusionFrame([example_frame.subspaces[i] for i in order])
    assert is_tight(shuffled) == pytest.approx(is_tight(example_frame), abs=1e-10)

    F = FusionFrame([orthonormalize(random_complex(rng, 2, 4)) for _ in range(5)], rng.uniform(0.5, 2, 5))
    reversed_frame = FusionFrame(F.subspaces[::-1], F.weights[::-1])
    assert is_tight(F) is None
    assert is_tight(reversed_frame) is None


def test_projections_are_covariant_under_tf_shifts(example_frame):
    base = projection(example_frame.subspaces[0])
    for (k, l), W in zip(example_frame.labels(), example_frame.subspaces):
        U = tf_shift_matrix(7, k, l)
        np.testing.assert_allclose(projection(W), U @ base @ U.conj().T, atol=1e-10)


def test_frame_inequality_on_non_tight_frame(rng):
    F = FusionFrame(
        [orthonormalize(random_complex(rng, int(rng.integers(1, 4)), 5)) for _ in range(6)],
        rng.uniform(0.5, 2, 6),
    )
    bounds = frame_bounds(F)
    assert bounds.is_fusion_frame
    assert bounds.lower < bounds.upper
    for _ in range(50):
        x = random_complex(rng, 5)
        energy = np.sum(fusion_analysis(x, F) ** 2)
        squared_norm = np.linalg.norm(x) ** 2
        assert energy >= bounds.lower * squared_norm * (1 - 1e-10)
        assert energy <= bounds.upper * squared_norm * (1 + 1e-10)


@pytest.mark.parametrize("lattice", [[(0, 0), (0, 0)], [(0, 0), (9, 9)], [(0, -1)], []])
def test_gabor_construction_validates_lattice(lattice):
    with pytest.raises(DimensionError):
        build_gabor_fusion(example_windows(), 1.0, lattice=lattice)


def test_gabor_fusion_frame_validates_lattice(example_frame):
    subspaces = example_frame.subspaces[:2]
    with pytest.raises(DimensionError):
        GaborFusionFrame(subspaces, example_windows(), [(1, 1), (1, 1)], 1.0)


def test_coisometries_may_be_stacked(example_frame):
    operators = np.array([tf_shift_matrix(7, k, l) for k, l in example_frame.labels()])
    F = build_from_coisometries(example_windows(), operators, 1.0)
    assert is_tight(F) == pytest.approx(14, abs=1e-10)
    with pytest.raises(HypothesisError):
        build_from_coisometries(example_windows(), np.zeros((0, 7, 7)), 1.0)
