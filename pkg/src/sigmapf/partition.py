"""Shape partitions of a tensor's modes.

A shape partition groups the ``m`` modes of a tensor into ``d`` blocks of
equal-dimension modes; every mode of block ``i`` is fed the same vector
``x_i``.  Modes are 0-based in the library and 1-based in every JSON / CLI
representation (see :meth:`ShapePartition.to_json` and :func:`from_json`).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import (
    DimensionMismatch,
    NotAPartition,
    OrderingViolation,
    OrderMismatch,
    ParseError,
)


@dataclass(frozen=True)
class ShapePartition:
    """A validated shape partition bound to a tensor shape.

    Construct through :func:`validate` (or :func:`from_json`); the
    dataclass constructor does not check anything.
    """

    groups: tuple[tuple[int, ...], ...]
    shape: tuple[int, ...]
    block_of_mode: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        owner = [0] * len(self.shape)
        for i, g in enumerate(self.groups):
            for a in g:
                owner[a] = i
        object.__setattr__(self, "block_of_mode", tuple(owner))

    @property
    def m(self) -> int:
        return len(self.shape)

    @property
    def d(self) -> int:
        return len(self.groups)

    @property
    def nu(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    @property
    def s(self) -> tuple[int, ...]:
        """Leading (smallest) mode of each block, 0-based."""
        return tuple(g[0] for g in self.groups)

    @property
    def s_sentinel(self) -> tuple[int, ...]:
        """Leading modes followed by the sentinel ``m``."""
        return self.s + (self.m,)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(self.shape[g[0]] for g in self.groups)

    @property
    def size(self) -> int:
        """Number of scalar unknowns, ``n_1 + ... + n_d``."""
        return sum(self.n)

    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for ni in self.n:
            out.append(acc)
            acc += ni
        return tuple(out)

    def to_json(self) -> list[list[int]]:
        return [[a + 1 for a in g] for g in self.groups]

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _normalize_groups(groups: Iterable[Iterable[int]], m: int) -> list[tuple[int, ...]]:
    out = []
    seen: set[int] = set()
    for g in groups:
        g = tuple(sorted(int(a) for a in g))
        if not g:
            raise NotAPartition("empty group")
        for a in g:
            if not 0 <= a < m:
                raise NotAPartition(f"mode {a + 1} outside 1..{m}")
            if a in seen:
                raise NotAPartition(f"mode {a + 1} appears in more than one group")
            seen.add(a)
        out.append(g)
    if not out:
        raise NotAPartition("no groups given")
    missing = sorted(set(range(m)) - seen)
    if missing:
        raise NotAPartition(f"modes {[a + 1 for a in missing]} are not covered")
    out.sort(key=lambda g: g[0])
    return out


def _check_dims(groups: Sequence[tuple[int, ...]], shape: Sequence[int]) -> None:
    for g in groups:
        dims = {shape[a] for a in g}
        if len(dims) > 1:
            raise DimensionMismatch(
                f"group {[a + 1 for a in g]} mixes dimensions {sorted(dims)}"
            )


def _check_shape(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(N) for N in shape)
    if len(shape) < 2:
        raise OrderMismatch(f"tensor order must be at least 2, got {len(shape)}")
    if any(N < 1 for N in shape):
        raise DimensionMismatch(f"dimensions must be positive, got {shape}")
    return shape


def validate(groups: Iterable[Iterable[int]], shape: Sequence[int]) -> ShapePartition:
    """Check that ``groups`` (0-based modes) is a shape partition of ``shape``.

    Groups are treated as sets and ordered by their smallest mode before the
    ordering clauses are checked: (a) blocks are contiguous and increasing,
    (b) block sizes are non-decreasing.
    """
    shape = _check_shape(shape)
    gs = _normalize_groups(groups, len(shape))
    _check_dims(gs, shape)
    for i in range(len(gs) - 1):
        if max(gs[i]) > min(gs[i + 1]):
            raise OrderingViolation(
                f"clause (a): group {[a + 1 for a in gs[i]]} has a mode after "
                f"group {[a + 1 for a in gs[i + 1]]}"
            )
    for g in gs:
        if g[-1] - g[0] + 1 != len(g):
            raise OrderingViolation(f"clause (a): group {[a + 1 for a in g]} is not contiguous")
    for i in range(len(gs) - 1):
        if len(gs[i]) > len(gs[i + 1]):
            raise OrderingViolation(
                f"clause (b): group sizes must be non-decreasing, got "
                f"{[len(g) for g in gs]}"
            )
    return ShapePartition(tuple(gs), shape)


def canonicalize(
    groups: Iterable[Iterable[int]], shape: Sequence[int]
) -> tuple[tuple[int, ...], ShapePartition]:
    """Permute modes so that ``groups`` becomes a valid shape partition.

    Returns ``(perm, sigma)`` where the permuted tensor is
    ``np.transpose(T, perm)`` (new mode ``t`` is old mode ``perm[t]``) and
    ``sigma`` is a shape partition of ``tuple(shape[a] for a in perm)``.
    Among all valid permutations the lexicographically smallest is chosen:
    blocks are laid out by (size, smallest mode), modes ascending inside.
    """
    shape = _check_shape(shape)
    gs = _normalize_groups(groups, len(shape))
    _check_dims(gs, shape)
    order = sorted(gs, key=lambda g: (len(g), g[0]))
    perm = tuple(a for g in order for a in g)
    new_groups, t = [], 0
    for g in order:
        new_groups.append(tuple(range(t, t + len(g))))
        t += len(g)
    new_shape = tuple(shape[a] for a in perm)
    return perm, validate(new_groups, new_shape)


def enumerate_partitions(shape: Sequence[int]) -> list[ShapePartition]:
    """All shape partitions of ``shape``, sorted by ``d`` then by block sizes."""
    shape = _check_shape(shape)
    m = len(shape)
    found: list[tuple[int, ...]] = []

    def extend(start: int, prev: int, sizes: list[int]):
        if start == m:
            found.append(tuple(sizes))
            return
        for size in range(prev, m - start + 1):
            block = shape[start:start + size]
            if len(set(block)) != 1:
                break
            sizes.append(size)
            extend(start + size, size, sizes)
            sizes.pop()

    extend(0, 1, [])
    found.sort(key=lambda sz: (len(sz), sz))
    out = []
    for sizes in found:
        groups, t = [], 0
        for size in sizes:
            groups.append(range(t, t + size))
            t += size
        out.append(validate(groups, shape))
    return out


def refines(sigma: ShapePartition, sigma_tilde: ShapePartition) -> bool:
    """Partial order: every block of ``sigma`` lies inside a block of ``sigma_tilde``."""
    if sigma.m != sigma_tilde.m:
        raise OrderMismatch(f"partitions of orders {sigma.m} and {sigma_tilde.m}")
    if sigma.d < sigma_tilde.d:
        return False
    owner = sigma_tilde.block_of_mode
    return all(len({owner[a] for a in g}) == 1 for g in sigma.groups)


def coarsest_grouping(shape: Sequence[int]) -> list[tuple[int, ...]]:
    """Group every mode with all other modes of the same dimension."""
    by_dim: dict[int, list[int]] = {}
    for a, N in enumerate(shape):
        by_dim.setdefault(int(N), []).append(a)
    return [tuple(v) for v in by_dim.values()]


def finest(shape: Sequence[int]) -> ShapePartition:
    return validate([[a] for a in range(len(shape))], shape)


def coarsest(shape: Sequence[int]) -> ShapePartition:
    """The coarsest shape partition valid on ``shape`` as given (first in enumeration order)."""
    return enumerate_partitions(shape)[0]


def from_json(obj, shape: Sequence[int]) -> ShapePartition:
    """Build a partition from 1-based JSON (a string or nested lists)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"partition is not valid JSON: {exc}") from None
    try:
        groups = [[int(a) - 1 for a in g] for g in obj]
    except (TypeError, ValueError):
        raise ParseError(f"partition must be a list of lists of integers, got {obj!r}") from None
    return validate(groups, shape)


def resolve(sigma, shape: Sequence[int]) -> ShapePartition:
    """Accept a ShapePartition, 0-based groups, or the names 'finest' / 'coarsest'."""
    if isinstance(sigma, ShapePartition):
        if sigma.shape != tuple(shape):
            raise DimensionMismatch(f"partition bound to {sigma.shape}, tensor has {tuple(shape)}")
        return sigma
    if sigma is None or sigma == "coarsest":
        return coarsest(shape)
    if sigma == "finest":
        return finest(shape)
    return validate(sigma, shape)
