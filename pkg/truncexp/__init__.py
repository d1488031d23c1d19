"""Exact interval estimation of the exponential rate from time truncated samples."""

__version__ = "0.1.1"

from .bayes import DEFAULT_PRIOR, GammaPrior, bayes_estimate, credible_interval  # noqa: E402
from .errors import (  # noqa: E402
    ContractError,
    DomainError,
    NoRootError,
    NumericError,
    SimulationError,
    TruncExpError,
    UndefinedMethodError,
    ValidationError,
)
from .exactdist import ExactDist, cdf, conditional_cdf, pdf, point_mass_at_zero  # noqa: E402
from .intervals import (  # noqa: E402
    IntervalMethod,
    IntervalResult,
    Sidedness,
    ci_conditional,
    ci_unconditional,
    solve_monotone,
)
from .jointsets import (  # noqa: E402
    JointSetModel,
    JointSetSpec,
    joint_set_boundary,
    joint_set_contains,
)
from .model import CensoredSample, estimate_lambda, log_likelihood, sufficient_stat  # noqa: E402
from .montecarlo import SimConfig, SimSummary, generate_sample, run_cell, run_grid  # noqa: E402
