"""Power methods for the dominant eigenpair, the induced norm and convergence checks.

The F-sequence normalizes ``F(x)`` block by block; the G-sequence normalizes
``G(x) = sqrt(x * F(x))``.  Each step records the Collatz-Wielandt bracket
of the current iterate, and the run stops once the bracket is narrower than
``tol``.  Running out of iterations is not an error: every recorded bracket
is still a valid enclosure, so the report is returned with
``converged=False``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import (
    ExponentMismatch,
    NonPositiveStart,
    NotStrictlyNonnegative,
    PartialOrderViolation,
    RateNotApplicable,
)
from .irreducibility import is_weakly_irreducible
from .partition import ShapePartition, refines, validate
from .spectral import SpectralProblem, build_problem, cw_functional, hilbert_metric
from .symmetry import eigenpair_residual, is_sigma_symmetric, symmetrize
from .tensor import (
    DenseTensor,
    as_blocks,
    as_tensor,
    block_maps,
    check_exponents,
    expand,
    multilinear_form,
    pnorm,
    uniform_start,
)

METHODS = ("F", "G")


@dataclass
class SolveConfig:
    """Settings for :func:`power_method`.

    ``method=None`` picks the G-sequence when ``rho(A)`` is numerically 1 and
    the F-sequence otherwise.  ``start=None`` uses the normalized uniform
    vector.
    """

    method: str | None = None
    tol: float = 1e-10
    max_iter: int = 100_000
    start: Sequence[np.ndarray] | None = None
    record_history: bool = True
    record_iterates: bool = False

    def __post_init__(self):
        if self.method is not None and self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS} or None, got {self.method!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        self.max_iter = int(self.max_iter)


@dataclass
class SolveReport:
    lam: float
    x: list[np.ndarray]
    iterations: int
    converged: bool
    method: str
    lower: float
    upper: float
    rhoA: float
    residual: float
    certificate: str
    cw_history: list[tuple[float, float]] = field(default_factory=list)
    iterates: list[list[np.ndarray]] | None = None
    rate_bound: float | None = None
    rate_constant: float | None = None
    precondition_unmet: bool = False
    symmetrized: bool = False

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    def to_json(self, *, history: bool = False) -> dict:
        out = {
            "lambda": self.lam,
            "blocks": [b.tolist() for b in self.x],
            "iterations": self.iterations,
            "converged": self.converged,
            "method": self.method,
            "certificate": self.certificate,
            "lower": self.lower,
            "upper": self.upper,
            "rhoA": self.rhoA,
            "residual": self.residual,
            "rate_certificate": self.rate_bound,
            "precondition_unmet": self.precondition_unmet,
            "symmetrized": self.symmetrized,
        }
        if history:
            out["cw_history"] = [list(pair) for pair in self.cw_history]
        return out


def random_start(sigma: ShapePartition, p, rng) -> list[np.ndarray]:
    """Positive random blocks, normalized; ``rng`` is a seed or a numpy Generator."""
    rng = np.random.default_rng(rng)
    p = check_exponents(p, sigma.d)
    out = []
    for ni, pi in zip(sigma.n, p):
        v = rng.uniform(0.05, 1.0, ni)
        out.append(v / pnorm(v, pi))
    return out


def _normalize(blocks, p) -> list[np.ndarray]:
    return [b / pnorm(b, pi) for b, pi in zip(blocks, p)]


def _step_image(prob: SpectralProblem, x: list[np.ndarray], method: str) -> list[np.ndarray]:
    F = [g ** e for g, e in zip(block_maps(prob.T, prob.sigma, x), prob.exponents)]
    if method == "F":
        return F
    return [np.sqrt(b * f) for b, f in zip(x, F)]


def _certificate(prob: SpectralProblem, method: str, converged: bool) -> str:
    if not converged or not prob.rho_le_one:
        return "heuristic"
    if method == "F" and prob.contraction:
        return "rate-certified"
    return "cw-certified"


def power_method(prob: SpectralProblem, cfg: SolveConfig | None = None, **overrides) -> SolveReport:
    """Iterate the normalized F- or G-map until the Collatz-Wielandt gap drops below ``tol``.

    Keyword overrides are applied on top of ``cfg`` (for example
    ``power_method(prob, tol=1e-12)``).

    :raises NotStrictlyNonnegative: the map would leave the positive cone.
    :raises NonPositiveStart: the supplied start has a nonpositive entry.
    """
    cfg = SolveConfig(**{**(cfg.__dict__ if cfg else {}), **overrides})
    if not prob.strictly_nonnegative:
        raise NotStrictlyNonnegative("the tensor is not strictly nonnegative for this partition")
    method = cfg.method or ("G" if prob.boundary else "F")
    power = 1.0 if method == "F" else 2.0

    x = uniform_start(prob.sigma, prob.p) if cfg.start is None else as_blocks(cfg.start, prob.sigma)
    if not all(np.all(b > 0) for b in x):
        raise NonPositiveStart("the starting vector must be entrywise positive")
    x = _normalize(x, prob.p)

    history: list[tuple[float, float]] = []
    iterates = [x] if cfg.record_iterates else None
    first_step = None
    converged = False
    k = 0
    while True:
        image = _step_image(prob, x, method)
        lower = cw_functional(prob, x, image, upper=False, power=power)
        upper = cw_functional(prob, x, image, upper=True, power=power)
        if cfg.record_history:
            history.append((lower, upper))
        if upper - lower < cfg.tol:
            converged = True
            break
        if k == cfg.max_iter:
            break
        nxt = _normalize(image, prob.p)
        if k == 0:
            first_step = hilbert_metric(nxt, x, prob.b)
        x = nxt
        k += 1
        if iterates is not None:
            iterates.append(x)

    lam = multilinear_form(prob.T, expand(x, prob.sigma))
    residual = eigenpair_residual(prob.T, prob.sigma, prob.p, lam, x)
    rate_bound = rate_constant = None
    if method == "F" and prob.contraction:
        rate_constant = (first_step or 0.0) / (1.0 - prob.rhoA)
        rate_bound = rate_constant * prob.rhoA ** k
    return SolveReport(
        lam=lam,
        x=x,
        iterations=k,
        converged=converged,
        method=method,
        lower=lower,
        upper=upper,
        rhoA=prob.rhoA,
        residual=residual,
        certificate=_certificate(prob, method, converged),
        cw_history=history,
        iterates=iterates,
        rate_bound=rate_bound,
        rate_constant=rate_constant,
        precondition_unmet=not prob.rho_le_one,
    )


def solve(T, sigma: ShapePartition, p, cfg: SolveConfig | None = None, **overrides) -> SolveReport:
    return power_method(build_problem(T, sigma, p), cfg, **overrides)


def restrict_to_support(T, sigma: ShapePartition):
    """Drop coordinates whose leading slice is zero, repeating until none remain.

    For a sigma-symmetric tensor such a coordinate never occurs in the
    multilinear form, so setting it to zero can only raise the Rayleigh
    quotient and the norm is unchanged.  Returns ``(T', sigma', keep)``
    with ``keep[i]`` the retained indices of block ``i``, or ``None`` if a
    block empties (the norm is then zero).
    """
    arr = T.array if isinstance(T, DenseTensor) else np.asarray(T, dtype=float)
    keep = [np.arange(ni) for ni in sigma.n]
    while True:
        sub = arr[np.ix_(*(keep[i] for i in sigma.block_of_mode))]
        nz = sub != 0
        changed = False
        for i, si in enumerate(sigma.s):
            other = tuple(a for a in range(sigma.m) if a != si)
            hit = nz.any(axis=other)
            if not hit.all():
                keep[i] = keep[i][hit]
                changed = True
        if any(len(k) == 0 for k in keep):
            return None
        if not changed:
            shape = tuple(len(keep[i]) for i in sigma.block_of_mode)
            return DenseTensor(sub), validate(sigma.groups, shape), keep


def solve_norm(T, sigma: ShapePartition, p, cfg: SolveConfig | None = None, **overrides) -> SolveReport:
    """The ``(sigma, p)``-norm of ``T`` as the dominant eigenvalue of its symmetrization.

    A tensor that is already sigma-symmetric is used as is.  Coordinates
    with zero slices are removed first (see :func:`restrict_to_support`)
    and come back as zeros in ``report.x``.  When ``rho(A) > 1`` the result
    carries ``precondition_unmet=True`` and a heuristic certificate.
    """
    T = as_tensor(T)
    p = check_exponents(p, sigma.d)
    symmetric = is_sigma_symmetric(T, sigma)
    S = T if symmetric else symmetrize(T, sigma)
    reduced = restrict_to_support(S, sigma)
    if reduced is None:
        prob = build_problem(S, sigma, p)
        x = uniform_start(sigma, p)
        return SolveReport(
            lam=0.0, x=x, iterations=0, converged=True, method="none", lower=0.0, upper=0.0,
            rhoA=prob.rhoA, residual=eigenpair_residual(S, sigma, p, 0.0, x),
            certificate="cw-certified" if prob.rho_le_one else "heuristic",
            precondition_unmet=not prob.rho_le_one, symmetrized=not symmetric,
        )
    S_red, sigma_red, keep = reduced
    cfg = SolveConfig(**{**(cfg.__dict__ if cfg else {}), **overrides})
    if cfg.start is not None:
        cfg.start = [np.asarray(b, dtype=float)[k] for b, k in zip(cfg.start, keep)]
    report = power_method(build_problem(S_red, sigma_red, p), cfg)
    if S_red.shape != S.shape:
        x = [np.zeros(ni) for ni in sigma.n]
        for xi, k, r in zip(x, keep, report.x):
            xi[k] = r
        report.x = x
        report.residual = eigenpair_residual(S, sigma, p, report.lam, x)
        report.iterates = None
    report.symmetrized = not symmetric
    return report


def verify_rate(prob: SpectralProblem, report: SolveReport, u_ref, *, slack: float = 1e-12) -> bool:
    """Check ``mu_b(x^k, u) <= mu_b(x^1, x^0) rho^k / (1 - rho)`` for every recorded ``k >= 1``.

    ``slack`` absorbs floating-point error in the metric itself.

    :raises RateNotApplicable: ``rho(A) >= 1`` or the run used the G-sequence.
    """
    if not prob.contraction:
        raise RateNotApplicable(f"rho(A) = {prob.rhoA} is not below 1")
    if report.method != "F":
        raise RateNotApplicable("the a-priori rate is stated for the F-sequence")
    if report.iterates is None:
        raise ValueError("the report has no iterates; solve with record_iterates=True")
    xs = report.iterates
    if len(xs) < 2:
        return True
    u = as_blocks(u_ref, prob.sigma)
    c = hilbert_metric(xs[1], xs[0], prob.b) / (1.0 - prob.rhoA)
    return all(
        hilbert_metric(xk, u, prob.b) <= c * prob.rhoA ** k + slack
        for k, xk in enumerate(xs[1:], start=1)
    )


def cross_partition_norm_check(
    T,
    sigma: ShapePartition,
    sigma_tilde: ShapePartition,
    p,
    p_tilde,
    cfg: SolveConfig | None = None,
    **overrides,
) -> tuple[float, float]:
    """The norms of ``T`` under a partition and under a coarser one.

    :raises PartialOrderViolation: ``sigma`` does not refine ``sigma_tilde``.
    :raises ExponentMismatch: a block of ``sigma`` and its enclosing block
        of ``sigma_tilde`` carry different exponents.
    """
    if not refines(sigma, sigma_tilde):
        raise PartialOrderViolation(f"{sigma} does not refine {sigma_tilde}")
    p = check_exponents(p, sigma.d)
    p_tilde = check_exponents(p_tilde, sigma_tilde.d)
    owner = sigma_tilde.block_of_mode
    for i, g in enumerate(sigma.groups):
        j = owner[g[0]]
        if not math.isclose(p[i], p_tilde[j], rel_tol=0.0, abs_tol=0.0):
            raise ExponentMismatch(f"block {i + 1} has p={p[i]} inside a block with p={p_tilde[j]}")
    S = T if is_sigma_symmetric(T, sigma_tilde) else symmetrize(T, sigma_tilde)
    fine = solve_norm(S, sigma, p, cfg, **overrides)
    coarse = solve_norm(S, sigma_tilde, p_tilde, cfg, **overrides)
    return fine.lam, coarse.lam


def has_uniqueness_guarantee(prob: SpectralProblem) -> bool:
    """``rho(A) <= 1`` with weak irreducibility, or ``rho(A) < 1`` with strict nonnegativity."""
    if prob.contraction and prob.strictly_nonnegative:
        return True
    return prob.rho_le_one and bool(is_weakly_irreducible(prob.T, prob.sigma))
