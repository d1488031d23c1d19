"""
Exact confidence intervals for lambda.

D = 0: the one-sided interval (0, -ln(1 - alpha) / (nT)], from
P_lambda(D = 0) = e^(-n lambda T) >= 1 - alpha.

D > 0: the equal-tail interval (lambda_L, lambda_U) solving
P_{lambda_L}(lambda_hat <= obs) = 1 - alpha/2 and P_{lambda_U}(lambda_hat <= obs) = alpha/2,
using either the unconditional law of lambda_hat or its law given D > 0.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from .errors import (
    ContractError,
    DomainError,
    NoRootError,
    NumericError,
    UndefinedMethodError,
    ValidationError,
)
from .exactdist import ExactDist, cdf, conditional_cdf
from .model import CensoredSample, sufficient_stat
from .utils.log import log_message

RESIDUAL_TOL = 1e-8
_MAX_BISECTIONS = 200
_MAX_EXPANSIONS = 60
_BRACKET_FACTOR = 100.0
# the conditional cdf is not evaluated below this P(D > 0)
_CONDITIONAL_MIN_MASS = 1e-4


class IntervalMethod:
    UNCONDITIONAL = "unconditional"
    CONDITIONAL = "conditional"
    BAYES = "bayes"

    ALL = (UNCONDITIONAL, CONDITIONAL, BAYES)


class Sidedness:
    ONE_SIDED_UPPER = "one-sided-upper"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class IntervalResult:
    lower: float
    upper: float
    level: float
    method: str
    sided: str

    def __post_init__(self):
        if not 0.0 <= self.lower < self.upper:
            raise ValidationError(f"interval bounds must satisfy 0 <= lower < upper, got {self}")
        if not 0.0 < self.level < 1.0:
            raise ValidationError(f"confidence level must lie in (0, 1), got {self.level}")
        if self.method not in IntervalMethod.ALL:
            raise ValidationError(f"unknown interval method {self.method!r}")
        if self.sided not in (Sidedness.ONE_SIDED_UPPER, Sidedness.TWO_SIDED):
            raise ValidationError(f"unknown sidedness {self.sided!r}")

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        if self.sided == Sidedness.ONE_SIDED_UPPER:
            return 0.0 < value <= self.upper
        return self.lower <= value <= self.upper

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "IntervalResult":
        return cls(
            lower=float(data["lower"]),
            upper=float(data["upper"]),
            level=float(data["level"]),
            method=str(data["method"]),
            sided=str(data["sided"]),
        )


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")


def _midpoint(lo: float, hi: float) -> float:
    # bisect in log scale while the bracket spans orders of magnitude
    if lo > 0.0 and hi > 4.0 * lo:
        return math.sqrt(lo * hi)
    return 0.5 * (lo + hi)


def solve_monotone(
    f: Callable[[float], float],
    target: float,
    bracket_lo: float,
    bracket_hi: float,
    tol: float = RESIDUAL_TOL,
    lower_limit: float = 0.0,
) -> float:
    """
    Root of f(lam) = target for a strictly decreasing f on (0, inf).

    The bracket is first widened geometrically (halving the lower end, doubling
    the upper end, at most 60 times each, never below `lower_limit`) until
    f(lo) >= target >= f(hi), then bisected until |f - target| <= tol.
    """
    if not 0.0 < bracket_lo < bracket_hi:
        raise DomainError(f"bracket must satisfy 0 < lo < hi, got ({bracket_lo}, {bracket_hi})")
    lo, hi = max(bracket_lo, lower_limit), bracket_hi
    f_lo, f_hi = f(lo), f(hi)
    if f_lo < f_hi:
        raise ContractError(f"f({lo}) = {f_lo} < f({hi}) = {f_hi}; f is not decreasing")

    expansions = 0
    while f_lo < target:
        if expansions == _MAX_EXPANSIONS or lo <= lower_limit:
            raise NoRootError(f"f stays below {target} down to lambda = {lo} (f = {f_lo})")
        hi, f_hi = lo, f_lo
        lo = max(lo / 2.0, lower_limit)
        f_lo = f(lo)
        expansions += 1

    expansions = 0
    while f_hi > target:
        if expansions == _MAX_EXPANSIONS:
            raise NoRootError(f"f stays above {target} up to lambda = {hi} (f = {f_hi})")
        lo, f_lo = hi, f_hi
        hi *= 2.0
        f_hi = f(hi)
        expansions += 1

    if abs(f_lo - target) <= tol:
        return lo
    if abs(f_hi - target) <= tol:
        return hi

    for iteration in range(1, _MAX_BISECTIONS + 1):
        mid = _midpoint(lo, hi)
        f_mid = f(mid)
        if abs(f_mid - target) <= tol:
            log_message(f"solve_monotone converged in {iteration} bisections", logging.DEBUG)
            return mid
        if f_mid > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * np.finfo(float).eps * hi:
            log_message(
                f"Bracket collapsed at lambda = {mid} with residual {f_mid - target:.3g} "
                f"(tolerance {tol})",
                logging.WARNING,
            )
            return mid
    raise NumericError(f"no convergence to {target} within {_MAX_BISECTIONS} bisections")


def case_one_upper(n: int, T: float, alpha: float) -> float:
    """Upper end -ln(1 - alpha) / (nT) of the one-sided interval for D = 0."""
    _check_alpha(alpha)
    return -math.log1p(-alpha) / (n * T)


def _solve_equal_tail(
    f: Callable[[float], float], observed: float, alpha: float, lower_limit: float = 0.0
) -> Tuple[float, float]:
    lo = observed / _BRACKET_FACTOR if observed > 0 else 1e-8
    hi = observed * _BRACKET_FACTOR if observed > 0 else 1.0
    lower = solve_monotone(f, 1.0 - alpha / 2.0, lo, hi, lower_limit=lower_limit)
    upper = solve_monotone(f, alpha / 2.0, lo, hi, lower_limit=lower_limit)
    if not lower < upper:
        raise NumericError(f"solved bounds are not ordered: lower={lower}, upper={upper}")
    return lower, upper


def ci_unconditional(sample: CensoredSample, alpha: float) -> IntervalResult:
    _check_alpha(alpha)
    stat = sufficient_stat(sample)
    if stat.D == 0:
        return IntervalResult(
            lower=0.0,
            upper=case_one_upper(sample.n, sample.T, alpha),
            level=1.0 - alpha,
            method=IntervalMethod.UNCONDITIONAL,
            sided=Sidedness.ONE_SIDED_UPPER,
        )

    observed = stat.D / stat.S

    def prob_below_observed(lam: float) -> float:
        return cdf(ExactDist(n=sample.n, T=sample.T, lam=lam), observed)

    lower, upper = _solve_equal_tail(prob_below_observed, observed, alpha)
    return IntervalResult(
        lower=lower,
        upper=upper,
        level=1.0 - alpha,
        method=IntervalMethod.UNCONDITIONAL,
        sided=Sidedness.TWO_SIDED,
    )


def conditional_lambda_floor(n: int, T: float) -> float:
    """Smallest rate at which the conditional cdf is evaluated: P(D > 0) = 1e-4."""
    return -math.log1p(-_CONDITIONAL_MIN_MASS) / (n * T)


def ci_conditional(sample: CensoredSample, alpha: float) -> IntervalResult:
    """
    Equal-tail interval from the law of lambda_hat given D > 0.

    Raises NoRootError when P_lambda(lambda_hat <= obs | D > 0) never reaches
    1 - alpha/2: given D > 0 the law tends to that of a single failure as
    lambda -> 0, so the lower equation need not have a solution.
    """
    _check_alpha(alpha)
    stat = sufficient_stat(sample)
    if stat.D == 0:
        raise UndefinedMethodError(
            "conditional method undefined for D=0: it conditions on at least one failure"
        )

    observed = stat.D / stat.S

    def prob_below_observed(lam: float) -> float:
        return conditional_cdf(ExactDist(n=sample.n, T=sample.T, lam=lam), observed)

    lower, upper = _solve_equal_tail(
        prob_below_observed,
        observed,
        alpha,
        lower_limit=conditional_lambda_floor(sample.n, sample.T),
    )
    return IntervalResult(
        lower=lower,
        upper=upper,
        level=1.0 - alpha,
        method=IntervalMethod.CONDITIONAL,
        sided=Sidedness.TWO_SIDED,
    )


def equation_residuals(
    sample: CensoredSample, result: IntervalResult
) -> Tuple[Optional[float], float]:
    """
    Residuals of the equations that define `result`.

    Two-sided: (F_{lower}(obs) - (1 - alpha/2), F_{upper}(obs) - alpha/2) with F
    the unconditional or conditional cdf. One-sided: (None,
    P_{upper}(D = 0) - (1 - alpha)).
    """
    alpha = 1.0 - result.level
    n, T = sample.n, sample.T
    if result.sided == Sidedness.ONE_SIDED_UPPER:
        return None, math.exp(-n * result.upper * T) - (1.0 - alpha)

    law = conditional_cdf if result.method == IntervalMethod.CONDITIONAL else cdf
    observed = sufficient_stat(sample)
    x = observed.D / observed.S
    lower_residual = law(ExactDist(n=n, T=T, lam=result.lower), x) - (1.0 - alpha / 2.0)
    upper_residual = law(ExactDist(n=n, T=T, lam=result.upper), x) - alpha / 2.0
    return lower_residual, upper_residual
