"""
Conjugate Bayesian inference for lambda.

With a Gamma(a, b) prior (shape a, rate b) the posterior given (D, S) is
Gamma(a + D, b + S). Everything below is closed form through Q and its
inverse.
"""

import math
import numbers
from dataclasses import dataclass

from .errors import DomainError
from .intervals import IntervalMethod, IntervalResult, Sidedness
from .model import CensoredSample, sufficient_stat
from .specfun import inv_reg_upper_gamma, reg_upper_gamma


@dataclass(frozen=True)
class GammaPrior:
    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            value = getattr(self, name)
            if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
                raise DomainError(f"prior parameter {name} must be positive, got {value!r}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def mean(self) -> float:
        return self.a / self.b


# a = b = 0.001: proper, yet close to the improper a = b = 0 limit
DEFAULT_PRIOR = GammaPrior(a=0.001, b=0.001)


def posterior(sample: CensoredSample, prior: GammaPrior) -> GammaPrior:
    stat = sufficient_stat(sample)
    return GammaPrior(a=prior.a + stat.D, b=prior.b + stat.S)


def bayes_estimate(sample: CensoredSample, prior: GammaPrior) -> float:
    """Posterior mean (a + D) / (b + S), the Bayes estimate under squared error loss."""
    return posterior(sample, prior).mean


def posterior_cdf(sample: CensoredSample, prior: GammaPrior, lam: float) -> float:
    if lam < 0:
        raise DomainError(f"lambda must be nonnegative, got {lam!r}")
    post = posterior(sample, prior)
    return 1.0 - float(reg_upper_gamma(post.a, lam * post.b))


def posterior_mass(sample: CensoredSample, prior: GammaPrior, lower: float, upper: float) -> float:
    """Posterior probability of [lower, upper]."""
    if not 0.0 <= lower <= upper:
        raise DomainError(f"need 0 <= lower <= upper, got ({lower}, {upper})")
    post = posterior(sample, prior)
    tail_lower = reg_upper_gamma(post.a, lower * post.b)
    tail_upper = reg_upper_gamma(post.a, upper * post.b)
    return float(tail_lower) - float(tail_upper)


def credible_interval(sample: CensoredSample, prior: GammaPrior, alpha: float) -> IntervalResult:
    """
    Equal-tail credible interval.

    Q(a + D, lambda_LB (b + S)) = 1 - alpha/2 and Q(a + D, lambda_UB (b + S)) = alpha/2.
    For D = 0 and a tiny prior shape the lower end underflows to 0.0.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    post = posterior(sample, prior)
    lower = inv_reg_upper_gamma(post.a, 1.0 - alpha / 2.0) / post.b
    upper = inv_reg_upper_gamma(post.a, alpha / 2.0) / post.b
    return IntervalResult(
        lower=lower,
        upper=upper,
        level=1.0 - alpha,
        method=IntervalMethod.BAYES,
        sided=Sidedness.TWO_SIDED,
    )
