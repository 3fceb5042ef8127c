"""Dense nonnegative tensors and the multilinear kernels built on them.

Notation used throughout the package:

* ``z`` is a list of ``m`` vectors, one per tensor mode;
* ``x`` is a *block vector*: a list of ``d`` vectors, one per block of a
  :class:`~sigmapf.partition.ShapePartition`;
* ``expand(x, sigma)`` repeats each block over the modes of its group.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .exceptions import BadExponent, BadMode, NegativeEntry, ShapeMismatch, ZeroBlock
from .partition import ShapePartition


class DenseTensor:
    """Immutable nonnegative tensor of order ``m >= 2``.

    The public flat view :attr:`data` is column-major (first index fastest),
    matching the on-disk fixture notation.
    """

    __slots__ = ("_array",)

    def __init__(self, array):
        arr = np.array(array, dtype=np.float64, copy=True)
        if arr.ndim < 2:
            raise ShapeMismatch(f"tensor order must be at least 2, got {arr.ndim}")
        if arr.size == 0:
            raise ShapeMismatch("tensor has a zero-length mode")
        if not np.all(np.isfinite(arr)):
            raise NegativeEntry("tensor entries must be finite")
        if np.any(arr < 0):
            raise NegativeEntry("tensor entries must be nonnegative")
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def from_flat(cls, shape: Sequence[int], data: Sequence[float]) -> "DenseTensor":
        shape = tuple(int(N) for N in shape)
        data = np.asarray(data, dtype=np.float64)
        if data.size != math.prod(shape):
            raise ShapeMismatch(f"{data.size} values for shape {shape}")
        return cls(data.reshape(shape, order="F"))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def shape(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def order(self) -> int:
        return self._array.ndim

    @property
    def data(self) -> np.ndarray:
        return self._array.ravel(order="F")

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self._array))

    def support(self) -> "DenseTensor":
        """0/1 tensor with the nonzero pattern of ``self``."""
        return DenseTensor((self._array != 0).astype(np.float64))

    def transpose(self, perm: Sequence[int]) -> "DenseTensor":
        return DenseTensor(np.transpose(self._array, tuple(perm)))

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._array, other._array)

    def __hash__(self):
        return hash((self.shape, self._array.tobytes()))

    def __repr__(self):
        return f"DenseTensor(shape={self.shape}, nnz={self.nnz})"


def as_tensor(T) -> DenseTensor:
    return T if isinstance(T, DenseTensor) else DenseTensor(T)


# ---------------------------------------------------------------------------
# block vectors


def as_blocks(x, sigma: ShapePartition) -> list[np.ndarray]:
    """Coerce ``x`` to a list of float arrays matching ``sigma``'s block sizes."""
    if isinstance(x, np.ndarray) and x.ndim == 1 and sigma.d == 1:
        x = [x]
    blocks = [np.asarray(b, dtype=np.float64) for b in x]
    if len(blocks) != sigma.d:
        raise ShapeMismatch(f"expected {sigma.d} blocks, got {len(blocks)}")
    for i, (b, ni) in enumerate(zip(blocks, sigma.n)):
        if b.shape != (ni,):
            raise ShapeMismatch(f"block {i + 1} has shape {b.shape}, expected ({ni},)")
    return blocks


def cone_of(x: Sequence[np.ndarray]) -> str:
    """'positive', 'nonnegative-nonzero', 'nonnegative' or 'signed'."""
    if any(np.any(b < 0) for b in x):
        return "signed"
    if all(np.all(b > 0) for b in x):
        return "positive"
    if all(np.any(b > 0) for b in x):
        return "nonnegative-nonzero"
    return "nonnegative"


def pnorm(v: np.ndarray, p: float) -> float:
    """``p``-norm with compensated summation."""
    return math.fsum(np.abs(v) ** p) ** (1.0 / p)


def normalize(x: Sequence[np.ndarray], p: Sequence[float]) -> list[np.ndarray]:
    out = []
    for i, (b, pi) in enumerate(zip(x, p)):
        nb = pnorm(b, pi)
        if nb == 0:
            raise ZeroBlock(f"block {i + 1} is zero")
        out.append(b / nb)
    return out


def uniform_start(sigma: ShapePartition, p: Sequence[float]) -> list[np.ndarray]:
    return [np.full(ni, ni ** (-1.0 / pi)) for ni, pi in zip(sigma.n, p)]


def expand(x: Sequence[np.ndarray], sigma: ShapePartition) -> list[np.ndarray]:
    """Mode ``t`` receives block ``i`` where ``t`` belongs to group ``i``."""
    blocks = as_blocks(x, sigma)
    return [blocks[i] for i in sigma.block_of_mode]


# ---------------------------------------------------------------------------
# multilinear kernels


def _check_modes(T: DenseTensor, z: Sequence[np.ndarray], skip: int | None = None):
    if len(z) != T.order:
        raise ShapeMismatch(f"expected {T.order} vectors, got {len(z)}")
    for a, (v, N) in enumerate(zip(z, T.shape)):
        if a == skip:
            continue
        if np.shape(v) != (N,):
            raise ShapeMismatch(f"vector {a + 1} has shape {np.shape(v)}, expected ({N},)")


def multilinear_form(T: DenseTensor, z: Sequence[np.ndarray]) -> float:
    """``sum_j T[j] z_1[j_1] ... z_m[j_m]``."""
    T = as_tensor(T)
    _check_modes(T, z)
    out = T.array
    for a in range(T.order - 1, -1, -1):
        out = np.tensordot(out, np.asarray(z[a], dtype=np.float64), axes=([a], [0]))
    return float(out)


def partial_map(T: DenseTensor, z: Sequence[np.ndarray], mode: int) -> np.ndarray:
    """Coefficient vector of ``z[mode]`` in the multilinear form (``z[mode]`` is ignored)."""
    T = as_tensor(T)
    if not 0 <= mode < T.order:
        raise BadMode(f"mode {mode} outside 0..{T.order - 1}")
    _check_modes(T, z, skip=mode)
    out = T.array
    for a in range(T.order - 1, -1, -1):
        if a != mode:
            out = np.tensordot(out, np.asarray(z[a], dtype=np.float64), axes=([a], [0]))
    return out


def block_maps(T: DenseTensor, sigma: ShapePartition, x: Sequence[np.ndarray]) -> list[np.ndarray]:
    """``[partial_map(T, expand(x), s_i) for each block i]``."""
    z = expand(x, sigma)
    return [partial_map(T, z, si) for si in sigma.s]


def psi(x, p: float) -> np.ndarray:
    """Componentwise ``|x|^(p-1) sign(x)``."""
    if not p > 1:
        raise BadExponent(f"exponent must exceed 1, got {p}")
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.abs(x) ** (p - 1.0)


def conjugate(p: float) -> float:
    if not p > 1:
        raise BadExponent(f"exponent must exceed 1, got {p}")
    return p / (p - 1.0)


def check_exponents(p, d: int) -> tuple[float, ...]:
    """Broadcast a scalar exponent or validate a length-``d`` sequence."""
    if np.ndim(p) == 0:
        p = [float(p)] * d
    p = tuple(float(v) for v in p)
    if len(p) != d:
        raise BadExponent(f"expected {d} exponents, got {len(p)}")
    for v in p:
        if not (v > 1 and math.isfinite(v)):
            raise BadExponent(f"exponents must lie in (1, inf), got {v}")
    return p


def rayleigh(T: DenseTensor, sigma: ShapePartition, p, x) -> float:
    """Scale-invariant quotient ``f_T(x^[sigma]) / prod ||x_i||_{p_i}^{nu_i}``."""
    p = check_exponents(p, sigma.d)
    blocks = as_blocks(x, sigma)
    denom = 1.0
    for i, (b, pi, nui) in enumerate(zip(blocks, p, sigma.nu)):
        nb = pnorm(b, pi)
        if nb == 0:
            raise ZeroBlock(f"block {i + 1} is zero")
        denom *= nb ** nui
    return multilinear_form(T, expand(blocks, sigma)) / denom
