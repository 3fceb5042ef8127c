"""Small named tensors with known classification.

``WEAK_FIXTURES[eps]`` is weakly irreducible under the ``i``-th partition of
:data:`CUBE_PARTITIONS` exactly when ``eps[i] == 1`` and is never strongly
irreducible.  ``STRONG_FIXTURES[eps]`` is weakly irreducible under all three
and strongly irreducible exactly when ``eps[i] == 1``.  Strings list entries
with the first index varying fastest.
"""
from __future__ import annotations

import numpy as np

from .io import tensor_from_bits
from .partition import validate
from .tensor import DenseTensor

CUBE_SHAPE = (3, 3, 3)

#: {{1,2,3}}, {{1},{2,3}}, {{1},{2},{3}} (0-based below)
CUBE_PARTITIONS = (
    validate([[0, 1, 2]], CUBE_SHAPE),
    validate([[0], [1, 2]], CUBE_SHAPE),
    validate([[0], [1], [2]], CUBE_SHAPE),
)

GRAPH_EXAMPLE_BITS = "000011100000010000100000000"

WEAK_BITS = {
    (0, 0, 0): "000000000000000000000000000",
    (1, 0, 0): "011100100000000000000000000",
    (0, 1, 0): "111010100000000000000000000",
    (1, 1, 0): "111100100000000000000000000",
    (0, 0, 1): "001010100000010000100000000",
    (1, 0, 1): "000011100000010000100000000",
    (0, 1, 1): "001010100010000000100000000",
    (1, 1, 1): "111100100100000000100000000",
}

STRONG_BITS = {
    (0, 0, 0): "111100100100000000100000000",
    (1, 0, 0): "111000000000100000000000100",
    (0, 1, 0): "100010100111000000111000000",
    (1, 1, 0): "111100100100100000100000100",
    (0, 0, 1): "110011011100000000100000000",
    (1, 0, 1): "011111111000100000000000100",
    (0, 1, 1): "100100100111000000111000000",
    (1, 1, 1): "110011011100100000100000100",
}


def graph_example() -> DenseTensor:
    """3x3x3 tensor with ones at (2,2,1), (3,2,1), (1,3,1), (2,2,2), (1,1,3) (1-based)."""
    arr = np.zeros(CUBE_SHAPE)
    for idx in [(2, 2, 1), (3, 2, 1), (1, 3, 1), (2, 2, 2), (1, 1, 3)]:
        arr[tuple(j - 1 for j in idx)] = 1.0
    return DenseTensor(arr)


WEAK_FIXTURES = {eps: tensor_from_bits(b) for eps, b in WEAK_BITS.items()}
STRONG_FIXTURES = {eps: tensor_from_bits(b) for eps, b in STRONG_BITS.items()}


def diagonal(n: int, m: int, values=None) -> DenseTensor:
    """Order-``m`` tensor with ``values[j]`` at ``(j, ..., j)``."""
    values = np.ones(n) if values is None else np.asarray(values, dtype=float)
    arr = np.zeros((n,) * m)
    for j in range(n):
        arr[(j,) * m] = values[j]
    return DenseTensor(arr)
