"""Divergence functionals on mixture paths.

The package evaluates convex divergences between finite discrete
distributions, applies an integral operator that contracts them and a
differential operator that expands them along mixture paths, provides
closed-form polylogarithm divergence sequences, and ships a verification
harness that property-tests every claimed inequality.
"""
from .errors import DomainError, SpecError, ToleranceError
from .distributions import (
    Distribution,
    MixturePath,
    mixture,
    new_distribution,
    random_distribution,
)
from .divergences import (
    BregmanSpec,
    DivergenceFunctional,
    FDivergenceSpec,
    NAMED_IDENTIFIERS,
    Orientation,
    evaluate,
    finite_difference_path_derivative,
    make_bregman,
    make_f_divergence,
    named_divergence,
    path_derivative,
    swap_orientation,
)
from .quadrature import QuadratureConfig, cumulative_integral, integrate
from .chebyshev import ChebyshevInterpolant, lobatto_nodes
from .polylog import polylog, polylog_integral, polylog_recurrence_check, polylog_series
from .operators import (
    OperatorResult,
    psi,
    psi_inverse,
    psi_iter,
    psi_profile,
    psi_roundtrip,
)
from .sequences import hellinger_psi, hellinger_psi_inverse, pl, sl
from .verify import (
    PropertyCheck,
    VerificationReport,
    check_derivative_dominates,
    check_integral_contraction,
    check_iterated_chain,
    check_path_invariance,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "SpecError",
    "ToleranceError",
    "Distribution",
    "MixturePath",
    "mixture",
    "new_distribution",
    "random_distribution",
    "BregmanSpec",
    "DivergenceFunctional",
    "FDivergenceSpec",
    "NAMED_IDENTIFIERS",
    "Orientation",
    "evaluate",
    "finite_difference_path_derivative",
    "make_bregman",
    "make_f_divergence",
    "named_divergence",
    "path_derivative",
    "swap_orientation",
    "QuadratureConfig",
    "cumulative_integral",
    "integrate",
    "ChebyshevInterpolant",
    "lobatto_nodes",
    "polylog",
    "polylog_integral",
    "polylog_recurrence_check",
    "polylog_series",
    "OperatorResult",
    "psi",
    "psi_inverse",
    "psi_iter",
    "psi_profile",
    "psi_roundtrip",
    "hellinger_psi",
    "hellinger_psi_inverse",
    "pl",
    "sl",
    "PropertyCheck",
    "VerificationReport",
    "check_derivative_dominates",
    "check_integral_contraction",
    "check_iterated_chain",
    "check_path_invariance",
    "run_suite",
    "__version__",
]
