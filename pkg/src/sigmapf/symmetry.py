"""Partial symmetry, symmetrization and the eigenpair residual."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .exceptions import DimensionMismatch, NotNormalized, ShapeMismatch
from .partition import ShapePartition
from .tensor import DenseTensor, as_blocks, as_tensor, block_maps, check_exponents, pnorm, psi


@dataclass(frozen=True)
class SymmetryReport:
    per_group: tuple[bool, ...]

    @property
    def symmetric(self) -> bool:
        return all(self.per_group)


def is_partially_symmetric(T, alpha: Iterable[int], *, rtol: float | None = None) -> bool:
    """True iff ``T`` is invariant under any swap of two modes in ``alpha``.

    Adjacent transpositions generate the symmetric group, so only those are
    checked.  Entries are compared exactly unless ``rtol`` is given.
    """
    T = as_tensor(T)
    alpha = sorted(set(int(a) for a in alpha))
    if len({T.shape[a] for a in alpha}) > 1:
        raise DimensionMismatch(f"modes {[a + 1 for a in alpha]} have different dimensions")
    arr = T.array
    for a, b in zip(alpha, alpha[1:]):
        swapped = np.swapaxes(arr, a, b)
        if rtol is None:
            if not np.array_equal(arr, swapped):
                return False
        elif not np.allclose(arr, swapped, rtol=rtol, atol=0.0):
            return False
    return True


def symmetry_report(T, sigma: ShapePartition, *, rtol: float | None = None) -> SymmetryReport:
    return SymmetryReport(tuple(is_partially_symmetric(T, g, rtol=rtol) for g in sigma.groups))


def is_sigma_symmetric(T, sigma: ShapePartition, *, rtol: float | None = None) -> bool:
    return symmetry_report(T, sigma, rtol=rtol).symmetric


def symmetrize(T, sigma: ShapePartition) -> DenseTensor:
    """Average of ``T`` over all mode permutations that preserve each block.

    The result is sigma-symmetric and has the same multilinear form on
    block-expanded arguments as ``T``.
    """
    T = as_tensor(T)
    if T.shape != sigma.shape:
        raise ShapeMismatch(f"tensor shape {T.shape} vs partition shape {sigma.shape}")
    per_group = [list(itertools.permutations(g)) for g in sigma.groups]
    stack = [
        np.transpose(T.array, [a for g in choice for a in g])
        for choice in itertools.product(*per_group)
    ]
    assert len(stack) == math.prod(math.factorial(v) for v in sigma.nu)
    # summing each multiset of values in sorted order makes the result
    # bitwise invariant under the block-preserving permutations
    acc = np.sort(np.stack(stack), axis=0).sum(axis=0)
    return DenseTensor(acc / len(stack))


def eigenpair_residual(T, sigma: ShapePartition, p, lam: float, x, *, norm_tol: float = 1e-8) -> float:
    """``max_i || T_{s_i}(x^[sigma]) - lam * psi_{p_i}(x_i) ||_inf`` on unit blocks."""
    T = as_tensor(T)
    p = check_exponents(p, sigma.d)
    blocks = as_blocks(x, sigma)
    for i, (b, pi) in enumerate(zip(blocks, p)):
        nb = pnorm(b, pi)
        if abs(nb - 1.0) > norm_tol:
            raise NotNormalized(f"block {i + 1} has {pi}-norm {nb!r}")
    maps = block_maps(T, sigma, blocks)
    return max(float(np.max(np.abs(g - lam * psi(b, pi)))) for g, b, pi in zip(maps, blocks, p))
