"""Brute-force references for cross-checking the solver and the classifiers.

Nothing here calls the solver's kernels: contractions are written with
``einsum`` and the matrix references run their own power iteration.
"""
from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from .exceptions import NotAMatrix
from .irreducibility import strong_irreducibility_oracle, weak_irreducibility_oracle
from .partition import ShapePartition
from .tensor import DenseTensor, as_tensor, check_exponents

__all__ = [
    "OracleResult",
    "matrix_reference",
    "rayleigh_ascent_oracle",
    "strong_irreducibility_oracle",
    "weak_irreducibility_oracle",
]


@dataclass
class OracleResult:
    value: float
    argmax: list[np.ndarray]
    restarts_used: int
    agreement_gap: float | None = None

    def paired_with(self, solver_value: float) -> "OracleResult":
        self.agreement_gap = abs(self.value - solver_value)
        return self


def _batched_norms(X: np.ndarray, p: float) -> np.ndarray:
    return (np.abs(X) ** p).sum(axis=1) ** (1.0 / p)


def rayleigh_ascent_oracle(
    T,
    sigma: ShapePartition,
    p,
    restarts: int = 64,
    steps: int = 2000,
    *,
    seed: int = 0,
    step_size: float = 0.5,
) -> OracleResult:
    """Best Rayleigh quotient found by projected gradient ascent from random positive starts.

    All restarts advance together as a batch.  Each step moves every block
    along its gradient projected onto the tangent space of the unit
    ``p_i``-sphere, with a diminishing step, then clips at zero and
    rescales.  The result is a lower bound on the maximum.
    """
    T = as_tensor(T)
    p = np.array(check_exponents(p, sigma.d))
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    rng = np.random.default_rng(seed)
    letters = string.ascii_lowercase[: T.order]
    owner = sigma.block_of_mode
    X = [rng.uniform(0.05, 1.0, (restarts, ni)) for ni in sigma.n]
    X = [Xi / _batched_norms(Xi, pi)[:, None] for Xi, pi in zip(X, p)]

    def value(X):
        spec = letters + "," + ",".join("z" + c for c in letters) + "->z"
        return np.einsum(spec, T.array, *(X[owner[a]] for a in range(T.order)))

    def gradient(X):
        grads = [np.zeros_like(Xi) for Xi in X]
        for a in range(T.order):
            others = [b for b in range(T.order) if b != a]
            spec = (
                letters + "," + ",".join("z" + letters[b] for b in others) + "->z" + letters[a]
            )
            grads[owner[a]] += np.einsum(spec, T.array, *(X[owner[b]] for b in others))
        return grads

    v = value(X)
    best = v.copy()
    best_X = [Xi.copy() for Xi in X]
    for t in range(steps):
        eta = step_size / np.sqrt(t + 1.0)
        G = gradient(X)
        moved = []
        for Xi, Gi, pi in zip(X, G, p):
            # drop the component normal to the unit p-sphere, whose normal at x is psi_p(x)
            normal = Xi ** (pi - 1.0)
            along = (Gi * Xi).sum(axis=1, keepdims=True) / (normal * Xi).sum(axis=1, keepdims=True)
            Gi = Gi - along * normal
            # dividing by the current value keeps early steps O(1) and lets them shrink at the optimum
            Y = np.maximum(Xi + eta * Gi / np.maximum(v, 1e-300)[:, None], 0.0)
            nrm = _batched_norms(Y, pi)[:, None]
            moved.append(np.where(nrm > 0, Y / np.where(nrm > 0, nrm, 1.0), Xi))
        X = moved
        v = value(X)
        better = v > best
        best = np.where(better, v, best)
        for Bi, Xi in zip(best_X, X):
            Bi[better] = Xi[better]
    r = int(np.argmax(best))
    return OracleResult(float(best[r]), [Bi[r].copy() for Bi in best_X], restarts)


def matrix_reference(M, mode: str = "eigen", *, tol: float = 1e-13, max_iter: int = 1_000_000) -> float:
    """Dominant eigenvalue or largest singular value of a nonnegative matrix.

    ``eigen`` iterates with ``M + I`` (the shift removes periodicity and
    leaves the Perron vector unchanged); ``singular`` iterates with
    ``M^T M``.  Stops when successive vectors differ by less than ``tol``.
    """
    arr = M.array if isinstance(M, DenseTensor) else np.asarray(M, dtype=float)
    if arr.ndim != 2:
        raise NotAMatrix(f"expected a matrix, got order {arr.ndim}")
    if mode == "eigen":
        if arr.shape[0] != arr.shape[1]:
            raise NotAMatrix(f"eigen mode needs a square matrix, got {arr.shape}")
        B = arr + np.eye(arr.shape[0])
    elif mode == "singular":
        B = arr.T @ arr
    else:
        raise ValueError(f"mode must be 'eigen' or 'singular', got {mode!r}")
    v = np.ones(B.shape[0]) / np.sqrt(B.shape[0])
    for _ in range(max_iter):
        w = B @ v
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        w /= nw
        done = np.max(np.abs(w - v)) < tol
        v = w
        if done:
            break
    rq = float(v @ B @ v)
    return rq - 1.0 if mode == "eigen" else float(np.sqrt(max(rq, 0.0)))
