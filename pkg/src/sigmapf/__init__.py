"""Perron-Frobenius theory for nonnegative tensors under shape partitions.

A shape partition groups tensor modes that share one vector variable.  The
package classifies tensors (strict nonnegativity, weak and strong
irreducibility), computes dominant eigenpairs and induced norms with
certified power methods, and ships brute-force oracles for checking both.
"""

__version__ = "0.1.0"

from .exceptions import PreconditionError, SigmaPFError  # noqa: E402
from .partition import (  # noqa: E402
    ShapePartition,
    canonicalize,
    coarsest,
    enumerate_partitions,
    finest,
    refines,
    validate,
)
from .tensor import DenseTensor, multilinear_form, partial_map, rayleigh  # noqa: E402
from .symmetry import eigenpair_residual, is_sigma_symmetric, symmetrize  # noqa: E402
from .irreducibility import (  # noqa: E402
    classify,
    is_strictly_nonnegative,
    is_strongly_irreducible,
    is_weakly_irreducible,
    sigma_graph,
)
from .spectral import (  # noqa: E402
    apply_F,
    apply_G,
    build_problem,
    cw_bounds,
    gelfand_estimate,
    hilbert_metric,
)
from .solver import (  # noqa: E402
    SolveConfig,
    SolveReport,
    cross_partition_norm_check,
    power_method,
    solve,
    solve_norm,
    verify_rate,
)
from .estimator import IrreducibilityClassifier, SigmaEigenSolver  # noqa: E402

__all__ = [
    "DenseTensor",
    "IrreducibilityClassifier",
    "PreconditionError",
    "ShapePartition",
    "SigmaEigenSolver",
    "SigmaPFError",
    "SolveConfig",
    "SolveReport",
    "apply_F",
    "apply_G",
    "build_problem",
    "canonicalize",
    "classify",
    "coarsest",
    "cross_partition_norm_check",
    "cw_bounds",
    "eigenpair_residual",
    "enumerate_partitions",
    "finest",
    "gelfand_estimate",
    "hilbert_metric",
    "is_sigma_symmetric",
    "is_strictly_nonnegative",
    "is_strongly_irreducible",
    "is_weakly_irreducible",
    "multilinear_form",
    "partial_map",
    "power_method",
    "rayleigh",
    "refines",
    "sigma_graph",
    "solve",
    "solve_norm",
    "symmetrize",
    "validate",
    "verify_rate",
]
