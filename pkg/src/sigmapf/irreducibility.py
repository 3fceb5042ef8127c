"""Strict nonnegativity, weak and strong irreducibility relative to a shape partition.

All checks run on the 0/1 support of the tensor: irreducibility does not
depend on the magnitude of the entries.  Nodes of the sigma-graph are pairs
``(i, l)`` (block, coordinate), 0-based, ordered by ``i`` then ``l``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import ShapeMismatch, TooLarge
from .partition import ShapePartition
from .tensor import DenseTensor, as_tensor, block_maps

Node = tuple[int, int]


def _check(T, sigma: ShapePartition) -> DenseTensor:
    T = as_tensor(T)
    if T.shape != sigma.shape:
        raise ShapeMismatch(f"tensor shape {T.shape} vs partition shape {sigma.shape}")
    return T


def _nonzero_indices(T: DenseTensor) -> np.ndarray:
    # column-major flat order, for reproducible witnesses
    flat = np.flatnonzero(T.data)
    return np.array(np.unravel_index(flat, T.shape, order="F")).T.reshape(-1, T.order)


def nodes(sigma: ShapePartition) -> list[Node]:
    return [(i, l) for i, ni in enumerate(sigma.n) for l in range(ni)]


def jacobian_matrix_M(T, sigma: ShapePartition) -> np.ndarray:
    """Integer matrix ``M[(i,t),(k,l)] = d/dx_{k,l} T_{i,t}(1^[sigma])`` of the support.

    Rows and columns follow :func:`nodes` order.
    """
    T = _check(T, sigma)
    off = sigma.offsets()
    size = sigma.size
    M = np.zeros((size, size), dtype=np.int64)
    E = _nonzero_indices(T)
    if len(E) == 0:
        return M
    for i, si in enumerate(sigma.s):
        rows = off[i] + E[:, si]
        for a in range(sigma.m):
            if a == si:
                continue
            k = sigma.block_of_mode[a]
            np.add.at(M, (rows, off[k] + E[:, a]), 1)
    return M


@dataclass(frozen=True)
class SigmaGraph:
    nodes: tuple[Node, ...]
    edges: frozenset[tuple[Node, Node]]

    def adjacency(self) -> np.ndarray:
        index = {v: r for r, v in enumerate(self.nodes)}
        A = np.zeros((len(self.nodes), len(self.nodes)), dtype=bool)
        for u, v in self.edges:
            A[index[u], index[v]] = True
        return A

    def edge_list(self) -> list[list[list[int]]]:
        """Sorted edges as 1-based ``[[i, l], [k, t]]`` pairs."""
        return [[[u[0] + 1, u[1] + 1], [v[0] + 1, v[1] + 1]] for u, v in sorted(self.edges)]


def sigma_graph(T, sigma: ShapePartition) -> SigmaGraph:
    """Edge ``(k,l) -> (i,t)`` iff ``x_{i,t}`` occurs in ``T_{k,l}(x^[sigma])``."""
    T = _check(T, sigma)
    edges = set()
    for j in _nonzero_indices(T):
        for k, sk in enumerate(sigma.s):
            src = (k, int(j[sk]))
            for i, group in enumerate(sigma.groups):
                for a in group:
                    dst = (i, int(j[a]))
                    if dst != src or a != sigma.s[i]:
                        edges.add((src, dst))
    return SigmaGraph(tuple(nodes(sigma)), frozenset(edges))


@dataclass(frozen=True)
class StrictResult:
    holds: bool
    witness: Node | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class WeakResult:
    holds: bool
    components: tuple[tuple[Node, ...], ...] = ()

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class StrongResult:
    holds: bool
    start: tuple[int, ...] | None = None
    support: tuple[np.ndarray, ...] | None = field(default=None, compare=False)
    max_steps: int = 0

    def __bool__(self):
        return self.holds


def is_strictly_nonnegative(T, sigma: ShapePartition) -> StrictResult:
    """Every slice fixing the leading index of a block holds a positive entry."""
    T = _check(T, sigma)
    nz = T.array != 0
    for i, si in enumerate(sigma.s):
        other = tuple(a for a in range(sigma.m) if a != si)
        hit = nz.any(axis=other)
        missing = np.flatnonzero(~hit)
        if missing.size:
            return StrictResult(False, (i, int(missing[0])))
    return StrictResult(True)


def strongly_connected_components(adjacency: np.ndarray) -> list[list[int]]:
    """SCCs as sorted index lists, ordered by smallest member."""
    ncomp, labels = connected_components(csr_matrix(adjacency), directed=True, connection="strong")
    comps: dict[int, list[int]] = {}
    for r, lab in enumerate(labels):
        comps.setdefault(int(lab), []).append(r)
    return sorted(comps.values(), key=lambda c: c[0])


def is_weakly_irreducible(T, sigma: ShapePartition) -> WeakResult:
    """The sigma-graph is strongly connected; otherwise report its SCCs."""
    G = sigma_graph(T, sigma)
    comps = strongly_connected_components(G.adjacency())
    if len(comps) == 1:
        return WeakResult(True)
    return WeakResult(False, tuple(tuple(G.nodes[r] for r in c) for c in comps))


def is_strongly_irreducible(T, sigma: ShapePartition) -> StrongResult:
    """Boolean support iteration from every tuple of coordinate vectors.

    ``e <- e or support(T(e^[sigma]))`` must reach the all-positive pattern
    within ``n_1 + ... + n_d - d`` steps for every starting tuple.
    """
    T = _check(T, sigma)
    S = T.support()
    bound = sigma.size - sigma.d
    worst = 0
    for start in itertools.product(*(range(ni) for ni in sigma.n)):
        e = [np.zeros(ni) for ni in sigma.n]
        for b, jb in zip(e, start):
            b[jb] = 1.0
        steps = 0
        while not all(b.all() for b in e):
            if steps == bound:
                return StrongResult(False, start, tuple(b > 0 for b in e), worst)
            grown = [((b > 0) | (g > 0)).astype(np.float64) for b, g in zip(e, block_maps(S, sigma, e))]
            steps += 1
            if all(np.array_equal(b, g) for b, g in zip(e, grown)):
                return StrongResult(False, start, tuple(b > 0 for b in e), worst)
            e = grown
        worst = max(worst, steps)
    return StrongResult(True, max_steps=worst)


def strong_irreducibility_oracle(T, sigma: ShapePartition, *, max_size: int = 20) -> bool:
    """Brute force over zero patterns ``V`` with ``V_i != [n_i]`` for all ``i``.

    For each such nonempty ``V`` some positive entry must have its leading
    index of a block ``k`` inside ``V_k`` and every other index outside ``V``.
    """
    T = _check(T, sigma)
    if sigma.size > max_size:
        raise TooLarge(f"{sigma.size} unknowns exceeds the subset-enumeration limit {max_size}")
    E = _nonzero_indices(T)
    owner = sigma.block_of_mode
    full = [(1 << ni) - 1 for ni in sigma.n]
    for V in itertools.product(*(range(f) for f in full)):
        if not any(V):
            continue
        # in_V[e, a]: index j_a of entry e lies in V of the block owning mode a
        in_V = np.array(
            [[(V[owner[a]] >> int(j[a])) & 1 for a in range(sigma.m)] for j in E], dtype=bool
        ).reshape(len(E), sigma.m)
        escaped = False
        for k, sk in enumerate(sigma.s):
            others = [a for a in range(sigma.m) if a != sk]
            if np.any(in_V[:, sk] & ~in_V[:, others].any(axis=1)):
                escaped = True
                break
        if not escaped:
            return False
    return True


def weak_irreducibility_oracle(T, sigma: ShapePartition, *, max_size: int = 64) -> bool:
    """``(I + M)^(N-1) > 0`` over the Boolean semiring, from the Jacobian pattern."""
    if sigma.size > max_size:
        raise TooLarge(f"{sigma.size} unknowns exceeds the limit {max_size}")
    M = jacobian_matrix_M(T, sigma) > 0
    N = M.shape[0]
    R = np.eye(N, dtype=bool)
    step = M | np.eye(N, dtype=bool)
    for _ in range(N - 1):
        R = (R.astype(np.int64) @ step.astype(np.int64)) > 0
    return bool(R.all())


@dataclass(frozen=True)
class IrreducibilityReport:
    strict: StrictResult
    weak: WeakResult
    strong: StrongResult
    graph: SigmaGraph

    def __post_init__(self):
        assert not self.strong.holds or self.weak.holds, "strong without weak irreducibility"
        assert not self.weak.holds or self.strict.holds, "weak irreducibility without strictness"

    def to_json(self) -> dict:
        def node(v):
            return [v[0] + 1, v[1] + 1]

        return {
            "strictly_nonnegative": self.strict.holds,
            "strict_witness": node(self.strict.witness) if self.strict.witness else None,
            "weakly_irreducible": self.weak.holds,
            "components": [[node(v) for v in c] for c in self.weak.components],
            "strongly_irreducible": self.strong.holds,
            "strong_start": [j + 1 for j in self.strong.start] if self.strong.start else None,
            "strong_support": (
                [b.astype(int).tolist() for b in self.strong.support]
                if self.strong.support is not None
                else None
            ),
            "strong_steps": self.strong.max_steps,
            "edges": self.graph.edge_list(),
        }


def classify(T, sigma: ShapePartition) -> IrreducibilityReport:
    return IrreducibilityReport(
        strict=is_strictly_nonnegative(T, sigma),
        weak=is_weakly_irreducible(T, sigma),
        strong=is_strongly_irreducible(T, sigma),
        graph=sigma_graph(T, sigma),
    )
