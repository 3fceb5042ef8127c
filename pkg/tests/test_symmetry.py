import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmapf.exceptions import DimensionMismatch, NotNormalized, ShapeMismatch
from sigmapf.fixtures import CUBE_PARTITIONS, diagonal
from sigmapf.partition import enumerate_partitions, validate
from sigmapf.symmetry import (
    eigenpair_residual,
    is_partially_symmetric,
    is_sigma_symmetric,
    symmetrize,
    symmetry_report,
)
from sigmapf.tensor import DenseTensor, expand, multilinear_form, partial_map


def test_partial_symmetry_examples():
    assert is_partially_symmetric(DenseTensor([[1.0, 2.0], [2.0, 3.0]]), [0, 1])
    assert not is_partially_symmetric(DenseTensor([[0.0, 1.0], [0.0, 0.0]]), [0, 1])
    assert is_partially_symmetric(DenseTensor([[0.0, 1.0], [0.0, 0.0]]), [1])
    with pytest.raises(DimensionMismatch):
        is_partially_symmetric(DenseTensor(np.ones((2, 3))), [0, 1])


def test_tolerant_comparison():
    M = np.array([[1.0, 2.0], [2.0 + 1e-14, 3.0]])
    assert not is_partially_symmetric(M, [0, 1])
    assert is_partially_symmetric(M, [0, 1], rtol=1e-12)


def test_report_is_a_conjunction():
    arr = np.zeros((3, 3, 3))
    arr[0, 1, 2] = arr[0, 2, 1] = 1.0
    rep = symmetry_report(arr, CUBE_PARTITIONS[1])
    assert rep.per_group == (True, True) and rep.symmetric
    rep = symmetry_report(arr, CUBE_PARTITIONS[0])
    assert rep.per_group == (False,) and not rep.symmetric


def test_matrix_symmetrization():
    M = np.array([[1.0, 4.0], [0.0, 2.0]])
    S = symmetrize(M, validate([[0, 1]], (2, 2)))
    assert np.array_equal(S.array, (M + M.T) / 2)


def test_symmetric_input_is_unchanged():
    D = diagonal(3, 3, [1.0, 2.0, 3.0])
    assert symmetrize(D, CUBE_PARTITIONS[0]) == D


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        symmetrize(np.ones((2, 2)), CUBE_PARTITIONS[0])


def loop_symmetrize(arr, sigma):
    """Average over block-preserving index permutations, one entry at a time."""
    out = np.zeros_like(arr)
    perms = list(itertools.product(*(itertools.permutations(g) for g in sigma.groups)))
    for idx in itertools.product(*(range(N) for N in arr.shape)):
        total = 0.0
        for choice in perms:
            moved = list(idx)
            for g, pg in zip(sigma.groups, choice):
                for a, b in zip(g, pg):
                    moved[a] = idx[b]
            total += arr[tuple(moved)]
        out[idx] = total / len(perms)
    return out


@pytest.mark.parametrize("shape", [(2, 2, 2), (2, 3, 3), (2, 2, 2, 2)])
def test_symmetrize_properties(shape, rng):
    arr = rng.random(shape)
    for sigma in enumerate_partitions(shape):
        S = symmetrize(arr, sigma)
        assert is_sigma_symmetric(S, sigma)
        assert np.allclose(S.array, loop_symmetrize(arr, sigma), rtol=1e-14, atol=0)
        twice = symmetrize(S, sigma)
        assert np.allclose(twice.array, S.array, rtol=1e-15, atol=0)
        for _ in range(100 if shape == (2, 2, 2) else 10):
            x = [rng.random(ni) for ni in sigma.n]
            z = expand(x, sigma)
            assert multilinear_form(S, z) == pytest.approx(multilinear_form(arr, z), rel=1e-13)


def test_gradient_identity(rng):
    arr = rng.random((2, 3, 3))
    sigma = validate([[0], [1, 2]], arr.shape)
    S = symmetrize(arr, sigma)
    x = [rng.uniform(0.5, 1.5, ni) for ni in sigma.n]
    h = 1e-6
    for i, si in enumerate(sigma.s):
        grad = sigma.nu[i] * partial_map(S, expand(x, sigma), si)
        for j in range(sigma.n[i]):
            up = [b.copy() for b in x]
            dn = [b.copy() for b in x]
            up[i][j] += h
            dn[i][j] -= h
            fd = (multilinear_form(arr, expand(up, sigma)) - multilinear_form(arr, expand(dn, sigma))) / (2 * h)
            assert fd == pytest.approx(grad[j], rel=1e-6)


def test_residual_examples():
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    sigma = validate([[0, 1]], (2, 2))
    u = [np.ones(2) / math.sqrt(2)]
    assert eigenpair_residual(M, sigma, 2, 3.0, u) <= 1e-12
    assert eigenpair_residual(M, sigma, 2, 2.9, u) > 0
    D = diagonal(3, 3, [5.0, 5.0, 5.0])
    assert eigenpair_residual(D, CUBE_PARTITIONS[0], 3, 5.0, [np.eye(3)[0]]) == 0.0


def test_residual_requires_unit_blocks():
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    with pytest.raises(NotNormalized):
        eigenpair_residual(M, validate([[0, 1]], (2, 2)), 2, 3.0, [np.ones(2)])


@given(st.integers(0, 2 ** 32 - 1))
def test_symmetrization_preserves_the_form_on_expanded_points(seed):
    rng = np.random.default_rng(seed)
    arr = rng.random((2, 2, 2))
    sigma = validate([[0], [1, 2]], arr.shape)
    S = symmetrize(arr, sigma)
    z = expand([rng.random(2), rng.random(2)], sigma)
    assert multilinear_form(S, z) == pytest.approx(multilinear_form(arr, z), rel=1e-13)
