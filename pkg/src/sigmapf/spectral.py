"""The order-preserving maps F and G and the quantities derived from them.

For a problem ``(T, sigma, p)``:

* ``F_i(x) = (T_{s_i}(x^[sigma]))^(p_i' - 1)`` with ``p_i' = p_i / (p_i - 1)``;
* ``G_i(x) = sqrt(x_i * F_i(x))``;
* ``A[i, j] = (p_i' - 1) (nu_j - delta_ij)`` is the degree of ``F_i`` in block ``j``;
* ``b`` is the positive left Perron vector of ``A`` with unit sum and
  ``gamma = sum(b p') / (sum(b p') - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import NonPositiveInput, NotStrictlyNonnegative, ShapeMismatch, ZeroBlock
from .irreducibility import is_strictly_nonnegative
from .partition import ShapePartition
from .tensor import (
    DenseTensor,
    as_blocks,
    as_tensor,
    block_maps,
    check_exponents,
    conjugate,
    pnorm,
)

#: half-width of the band around 1 treated as rho(A) == 1
RHO_TOL = 1e-9


def homogeneity_matrix(nu: Sequence[int], p: Sequence[float]) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    q = np.array([conjugate(v) - 1.0 for v in p])
    d = len(nu)
    return q[:, None] * (np.ones((d, 1)) * nu[None, :] - np.eye(d))


def perron(A: np.ndarray, *, tol: float = 1e-14, max_iter: int = 100_000) -> tuple[float, np.ndarray]:
    """Spectral radius and unit-sum positive left eigenvector of an irreducible nonnegative ``A``.

    Power iteration on ``(A + I)^T``, which is primitive whenever ``A`` is
    irreducible.
    """
    d = A.shape[0]
    B = (A + np.eye(d)).T
    b = np.full(d, 1.0 / d)
    for _ in range(max_iter):
        nb = B @ b
        nb /= nb.sum()
        if np.max(np.abs(nb - b)) <= tol:
            b = nb
            break
        b = nb
    rho = float(np.dot(A.T @ b, b) / np.dot(b, b))
    return rho, b


@dataclass(frozen=True, eq=False)
class SpectralProblem:
    T: DenseTensor
    sigma: ShapePartition
    p: tuple[float, ...]
    p_conj: tuple[float, ...]
    A: np.ndarray
    rhoA: float
    b: np.ndarray
    gamma: float
    strictly_nonnegative: bool

    @property
    def d(self) -> int:
        return self.sigma.d

    @property
    def exponents(self) -> np.ndarray:
        """``p_i' - 1``, the power applied to ``T_{s_i}`` in ``F_i``."""
        return np.array([q - 1.0 for q in self.p_conj])

    @property
    def contraction(self) -> bool:
        return self.rhoA < 1.0 - RHO_TOL

    @property
    def boundary(self) -> bool:
        return abs(self.rhoA - 1.0) <= RHO_TOL

    @property
    def rho_le_one(self) -> bool:
        return self.rhoA <= 1.0 + RHO_TOL

    def summary(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "p": list(self.p),
            "d": self.d,
            "nu": list(self.sigma.nu),
            "n": list(self.sigma.n),
            "A": self.A.tolist(),
            "rhoA": self.rhoA,
            "b": self.b.tolist(),
            "gamma": self.gamma,
            "rho_le_one": self.rho_le_one,
            "strictly_nonnegative": self.strictly_nonnegative,
        }


def build_problem(T, sigma: ShapePartition, p) -> SpectralProblem:
    T = as_tensor(T)
    if T.shape != sigma.shape:
        raise ShapeMismatch(f"tensor shape {T.shape} vs partition shape {sigma.shape}")
    p = check_exponents(p, sigma.d)
    p_conj = tuple(conjugate(v) for v in p)
    A = homogeneity_matrix(sigma.nu, p)
    if sigma.d == 1:
        rho, b = float(A[0, 0]), np.ones(1)
    else:
        rho, b = perron(A)
    gp = float(np.dot(b, p_conj))
    A.setflags(write=False)
    b.setflags(write=False)
    return SpectralProblem(
        T=T,
        sigma=sigma,
        p=p,
        p_conj=p_conj,
        A=A,
        rhoA=rho,
        b=b,
        gamma=gp / (gp - 1.0),
        strictly_nonnegative=bool(is_strictly_nonnegative(T, sigma)),
    )


def _positive_blocks(prob: SpectralProblem, x) -> list[np.ndarray]:
    blocks = as_blocks(x, prob.sigma)
    if not all(np.all(b > 0) for b in blocks):
        raise NonPositiveInput("map arguments must be entrywise positive")
    return blocks


def apply_F(prob: SpectralProblem, x) -> list[np.ndarray]:
    if not prob.strictly_nonnegative:
        raise NotStrictlyNonnegative("F does not map the positive cone into itself for this tensor")
    blocks = _positive_blocks(prob, x)
    return [g ** e for g, e in zip(block_maps(prob.T, prob.sigma, blocks), prob.exponents)]


def apply_G(prob: SpectralProblem, x) -> list[np.ndarray]:
    blocks = _positive_blocks(prob, x)
    return [np.sqrt(b * f) for b, f in zip(blocks, apply_F(prob, blocks))]


def hilbert_metric(x, y, b) -> float:
    """Weighted sum of per-block Hilbert projective distances."""
    if len(x) != len(y) or len(x) != len(b):
        raise ShapeMismatch("x, y and b must have the same number of blocks")
    total = 0.0
    for xi, yi, bi in zip(x, y, b):
        xi = np.asarray(xi, dtype=float)
        yi = np.asarray(yi, dtype=float)
        if xi.shape != yi.shape:
            raise ShapeMismatch(f"block shapes {xi.shape} and {yi.shape}")
        if not (np.all(xi > 0) and np.all(yi > 0)):
            raise NonPositiveInput("the Hilbert metric needs positive vectors")
        r = np.log(xi) - np.log(yi)
        total += bi * (r.max() - r.min())
    return float(total)


def cw_functional(prob: SpectralProblem, x, image, *, upper: bool, power: float = 1.0) -> float:
    """One Collatz-Wielandt product from blocks ``x`` and their precomputed ``image``."""
    logs = 0.0
    for i, (xi, fi, bi) in enumerate(zip(x, image, prob.b)):
        if upper:
            if not np.all(xi > 0):
                raise NonPositiveInput("the upper bound needs a positive vector")
            ratio = np.max(fi / xi)
        else:
            mask = xi > 0
            if not mask.any():
                raise ZeroBlock(f"block {i + 1} is zero")
            ratio = np.min(fi[mask] / xi[mask])
        if ratio == 0:
            return 0.0
        logs += (prob.gamma - 1.0) * bi * math.log(ratio)
    return math.exp(power * logs)


def cw_bounds(prob: SpectralProblem, x, map: str = "F") -> tuple[float, float]:
    """Collatz-Wielandt lower and upper bounds on the dominant eigenvalue.

    For ``map="G"`` the values are squares of the G-functionals.  The upper
    bound is ``inf`` when ``x`` has a zero entry.
    """
    blocks = as_blocks(x, prob.sigma)
    positive = all(np.all(b > 0) for b in blocks)
    if map == "F":
        if positive:
            image = apply_F(prob, blocks)
        else:
            maps = block_maps(prob.T, prob.sigma, blocks)
            image = [g ** e for g, e in zip(maps, prob.exponents)]
        power = 1.0
    elif map == "G":
        if positive:
            image = apply_G(prob, blocks)
        else:
            maps = block_maps(prob.T, prob.sigma, blocks)
            image = [np.sqrt(b * g ** e) for b, g, e in zip(blocks, maps, prob.exponents)]
        power = 2.0
    else:
        raise ValueError(f"map must be 'F' or 'G', got {map!r}")
    lower = cw_functional(prob, blocks, image, upper=False, power=power)
    upper = cw_functional(prob, blocks, image, upper=True, power=power) if positive else math.inf
    return lower, upper


def gelfand_estimate(prob: SpectralProblem, z=None, k: int = 100) -> float:
    """``k``-th Gelfand iterate ``(prod ||F^k_i(z)||^{b_i})^{(gamma-1)/k}`` in log space.

    Only normalized iterates are formed; the log-norms obey
    ``L^k = c^k + A L^{k-1}`` with ``c_i^k = log ||F_i(x^{k-1})||``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if z is None:
        from .tensor import uniform_start

        z = uniform_start(prob.sigma, prob.p)
    blocks = as_blocks(z, prob.sigma)
    L = np.array([math.log(pnorm(b, pi)) for b, pi in zip(blocks, prob.p)])
    x = [b / pnorm(b, pi) for b, pi in zip(blocks, prob.p)]
    for _ in range(k):
        fx = apply_F(prob, x)
        norms = np.array([pnorm(f, pi) for f, pi in zip(fx, prob.p)])
        L = np.log(norms) + prob.A @ L
        x = [f / nf for f, nf in zip(fx, norms)]
    return math.exp((prob.gamma - 1.0) * float(prob.b @ L) / k)
