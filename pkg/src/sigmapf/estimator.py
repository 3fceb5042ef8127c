"""scikit-learn style wrappers.

``fit`` takes a single nonnegative tensor rather than a sample matrix, so
these classes borrow the parameter handling of :class:`BaseEstimator`
(``get_params``, ``set_params``, ``clone``) and the fitted-attribute
convention without claiming to be transformers or predictors.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .irreducibility import classify
from .partition import ShapePartition, resolve
from .solver import SolveConfig, power_method, random_start, solve_norm
from .spectral import build_problem
from .tensor import DenseTensor, as_tensor


def check_tensor(T, *, min_order: int = 2) -> DenseTensor:
    """Coerce array-likes to :class:`DenseTensor`, enforcing order and nonnegativity."""
    T = as_tensor(T)
    if T.order < min_order:
        raise ValueError(f"tensor order must be at least {min_order}, got {T.order}")
    return T


def check_partition(sigma, T: DenseTensor) -> ShapePartition:
    """Accept a :class:`ShapePartition`, 0-based groups, ``'finest'`` or ``'coarsest'``."""
    return resolve(sigma, T.shape)


class SigmaEigenSolver(BaseEstimator):
    """Dominant nonnegative eigenpair (or the induced norm) of a tensor.

    Parameters
    ----------
    sigma : ShapePartition, list of 0-based groups, 'finest' or 'coarsest'
    p : float or sequence of floats, one per block
    norm : bool
        Symmetrize first and report the ``(sigma, p)``-norm.
    method : {'F', 'G', None}
    tol, max_iter : stopping rule on the Collatz-Wielandt gap
    random_state : None or int
        ``None`` starts from the uniform vector, an integer from a seeded
        random positive vector.

    Attributes
    ----------
    eigenvalue_, eigenvector_, n_iter_, converged_, report_, problem_
    """

    def __init__(self, sigma="coarsest", p=2.0, *, norm=False, method=None, tol=1e-10,
                 max_iter=100_000, random_state=None):
        self.sigma = sigma
        self.p = p
        self.norm = norm
        self.method = method
        self.tol = tol
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, T, y=None):
        T = check_tensor(T)
        sigma = check_partition(self.sigma, T)
        p = self.p
        start = None if self.random_state is None else random_start(sigma, p, self.random_state)
        cfg = SolveConfig(method=self.method, tol=self.tol, max_iter=self.max_iter, start=start)
        if self.norm:
            report = solve_norm(T, sigma, p, cfg)
        else:
            report = power_method(build_problem(T, sigma, p), cfg)
        self.sigma_ = sigma
        self.report_ = report
        self.eigenvalue_ = report.lam
        self.eigenvector_ = [b.copy() for b in report.x]
        self.n_iter_ = report.iterations
        self.converged_ = report.converged
        self.certificate_ = report.certificate
        return self

    def score(self, T=None, y=None) -> float:
        """The fitted eigenvalue (or norm); ``T`` is accepted for API symmetry only."""
        check_is_fitted(self, "eigenvalue_")
        return self.eigenvalue_


class IrreducibilityClassifier(BaseEstimator):
    """Strict nonnegativity, weak and strong irreducibility under one partition."""

    def __init__(self, sigma="coarsest"):
        self.sigma = sigma

    def fit(self, T, y=None):
        T = check_tensor(T)
        self.sigma_ = check_partition(self.sigma, T)
        self.report_ = classify(T, self.sigma_)
        self.strictly_nonnegative_ = self.report_.strict.holds
        self.weakly_irreducible_ = self.report_.weak.holds
        self.strongly_irreducible_ = self.report_.strong.holds
        return self

    def verdicts(self) -> np.ndarray:
        check_is_fitted(self, "report_")
        return np.array(
            [self.strictly_nonnegative_, self.weakly_irreducible_, self.strongly_irreducible_]
        )
