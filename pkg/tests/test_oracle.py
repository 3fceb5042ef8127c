import numpy as np
import pytest

from sigmapf.exceptions import NotAMatrix
from sigmapf.fixtures import CUBE_PARTITIONS, STRONG_FIXTURES, WEAK_FIXTURES
from sigmapf.irreducibility import is_strongly_irreducible, is_weakly_irreducible
from sigmapf.oracle import (
    matrix_reference,
    rayleigh_ascent_oracle,
    strong_irreducibility_oracle,
    weak_irreducibility_oracle,
)
from sigmapf.partition import validate
from sigmapf.solver import solve_norm
from sigmapf.symmetry import symmetrize
from sigmapf.tensor import pnorm, rayleigh


def test_matrix_reference_examples():
    assert matrix_reference([[2.0, 1.0], [1.0, 2.0]], "eigen") == pytest.approx(3.0, abs=1e-12)
    assert matrix_reference([[0.0, 2.0], [0.0, 0.0]], "singular") == pytest.approx(2.0, abs=1e-12)
    assert matrix_reference(np.eye(4), "eigen") == pytest.approx(1.0, abs=1e-12)


def test_matrix_reference_against_lapack(rng):
    for _ in range(20):
        M = rng.random((4, 5))
        assert matrix_reference(M, "singular") == pytest.approx(np.linalg.svd(M)[1][0], rel=1e-10)
        Q = rng.random((4, 4))
        assert matrix_reference(Q, "eigen") == pytest.approx(max(abs(np.linalg.eigvals(Q))), rel=1e-10)


def test_matrix_reference_errors():
    with pytest.raises(NotAMatrix):
        matrix_reference(np.ones((2, 2, 2)))
    with pytest.raises(NotAMatrix):
        matrix_reference(np.ones((2, 3)), "eigen")


def test_ascent_examples():
    res = rayleigh_ascent_oracle([[2.0, 1.0], [1.0, 2.0]], validate([[0, 1]], (2, 2)), 2, restarts=8, steps=500)
    assert res.value == pytest.approx(3.0, abs=1e-6)
    res = rayleigh_ascent_oracle(np.ones((2, 2)), validate([[0], [1]], (2, 2)), (2, 2), restarts=8, steps=500)
    assert res.value == pytest.approx(2.0, abs=1e-6)


def test_ascent_result_is_consistent(rng):
    S = symmetrize(rng.random((3, 3, 3)), CUBE_PARTITIONS[0])
    res = rayleigh_ascent_oracle(S, CUBE_PARTITIONS[1], (3, 3), restarts=16, steps=800)
    assert res.restarts_used == 16
    for b in res.argmax:
        assert pnorm(b, 3) == pytest.approx(1.0, rel=1e-12)
    assert res.value == pytest.approx(rayleigh(S, CUBE_PARTITIONS[1], (3, 3), res.argmax), rel=1e-12)
    lam = solve_norm(S, CUBE_PARTITIONS[1], (3, 3)).lam
    assert res.paired_with(lam).agreement_gap < 1e-6


def test_ascent_matches_solver_on_supersymmetric_tensors(rng):
    for _ in range(3):
        S = symmetrize(rng.random((3, 3, 3)), CUBE_PARTITIONS[0])
        lam = solve_norm(S, CUBE_PARTITIONS[0], 3).lam
        val = rayleigh_ascent_oracle(S, CUBE_PARTITIONS[0], 3).value
        assert val <= lam + 1e-6
        assert val == pytest.approx(lam, abs=1e-6)


def test_classifier_oracles_on_random_tensors(rng):
    for _ in range(500):
        arr = rng.random((3, 3, 3)) * (rng.random((3, 3, 3)) < rng.uniform(0.1, 0.5))
        for sigma in CUBE_PARTITIONS:
            assert weak_irreducibility_oracle(arr, sigma) == bool(is_weakly_irreducible(arr, sigma))
            assert strong_irreducibility_oracle(arr, sigma) == bool(is_strongly_irreducible(arr, sigma))


def test_classifier_oracles_on_fixtures():
    for table in (WEAK_FIXTURES, STRONG_FIXTURES):
        for T in table.values():
            for sigma in CUBE_PARTITIONS:
                assert weak_irreducibility_oracle(T, sigma) == bool(is_weakly_irreducible(T, sigma))
                assert strong_irreducibility_oracle(T, sigma) == bool(is_strongly_irreducible(T, sigma))
