"""
Joint confidence sets for two-parameter lifetime models when no failure is seen.

If none of the n items fails in [0, T] then {(theta1, theta2): P(D = 0) >= 1 - alpha}
is a 100(1 - alpha)% joint confidence set. Each model has P(D = 0) in closed
form, so the sets are kept as predicates plus closed-form boundary curves:

    two-param-exponential  (mu, lambda)    e^(-n lambda (T - mu)),  mu < T
    weibull                (beta, lambda)  e^(-n lambda T^beta)
    generalized-exponential (beta, lambda) (1 - (1 - e^(-lambda T))^beta)^n
"""

import math
import numbers
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from .errors import DomainError, ValidationError
from .utils.log import log_message

DEFAULT_LAMBDA_CAP = 1e6


class JointSetModel:
    TWO_PARAM_EXPONENTIAL = "two-param-exponential"
    WEIBULL = "weibull"
    GENERALIZED_EXPONENTIAL = "generalized-exponential"

    ALL = (TWO_PARAM_EXPONENTIAL, WEIBULL, GENERALIZED_EXPONENTIAL)


@dataclass(frozen=True)
class JointSetSpec:
    model: str
    n: int
    T: float
    alpha: float

    def __post_init__(self):
        if self.model not in JointSetModel.ALL:
            raise ValidationError(
                f"unknown model {self.model!r}; expected one of {', '.join(JointSetModel.ALL)}"
            )
        if isinstance(self.n, bool) or not isinstance(self.n, numbers.Integral) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not (math.isfinite(self.T) and self.T > 0):
            raise DomainError(f"T must be positive, got {self.T!r}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def exposure_bound(self) -> float:
        """-ln(1 - alpha) / n, the largest admissible lambda-exposure."""
        return -math.log1p(-self.alpha) / self.n

    @property
    def failure_fraction_bound(self) -> float:
        """1 - (1 - alpha)^(1/n), the largest admissible per-item P(X <= T)."""
        return -math.expm1(math.log1p(-self.alpha) / self.n)


@dataclass(frozen=True)
class BoundaryPoint:
    theta1: float
    theta2: float
    capped: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _check_parameters(spec: JointSetSpec, theta1: float, theta2: float) -> None:
    if not theta2 > 0:
        raise DomainError(f"lambda must be positive, got {theta2!r}")
    if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL:
        if not math.isfinite(theta1):
            raise DomainError(f"mu must be finite, got {theta1!r}")
    elif not theta1 > 0:
        raise DomainError(f"beta must be positive, got {theta1!r}")


def probability_no_failure(spec: JointSetSpec, theta1: float, theta2: float) -> float:
    """Exact P(D = 0) for n items on test up to T."""
    _check_parameters(spec, theta1, theta2)
    n, T = spec.n, spec.T
    if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL:
        mu, lam = theta1, theta2
        if mu >= T:
            return 1.0
        return math.exp(-n * lam * (T - mu))
    if spec.model == JointSetModel.WEIBULL:
        beta, lam = theta1, theta2
        return math.exp(-n * lam * T**beta)
    fail_fraction = lifetime_cdf(spec, T, theta1, theta2)
    if fail_fraction >= 1.0:
        return 0.0
    return math.exp(n * math.log1p(-fail_fraction))


def joint_set_contains(spec: JointSetSpec, theta1: float, theta2: float) -> bool:
    _check_parameters(spec, theta1, theta2)
    T = spec.T
    if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL:
        mu, lam = theta1, theta2
        return mu < T and lam * (T - mu) <= spec.exposure_bound
    if spec.model == JointSetModel.WEIBULL:
        beta, lam = theta1, theta2
        return lam * T**beta <= spec.exposure_bound
    beta, lam = theta1, theta2
    return (-math.expm1(-lam * T)) ** beta <= spec.failure_fraction_bound


def _boundary_lambda(spec: JointSetSpec, theta1: float) -> float:
    T = spec.T
    if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL:
        return spec.exposure_bound / (T - theta1)
    if spec.model == JointSetModel.WEIBULL:
        return spec.exposure_bound / T**theta1
    per_item = spec.failure_fraction_bound ** (1.0 / theta1)
    return -math.log1p(-per_item) / T


def joint_set_boundary(
    spec: JointSetSpec, grid: Iterable[float], lambda_cap: float = DEFAULT_LAMBDA_CAP
) -> List[BoundaryPoint]:
    """
    The curve where the set's inequality holds with equality, over a theta1 axis.

    theta1 is mu for the two-parameter exponential and beta otherwise. Each
    returned lambda is the largest double inside the set (rounding never puts
    a boundary point outside). Points with mu >= T are skipped, and lambdas
    above `lambda_cap` are capped and flagged.
    """
    axis = [float(v) for v in grid]
    if not axis:
        raise ValidationError("joint-set boundary needs a nonempty grid")

    points: List[BoundaryPoint] = []
    skipped = 0
    for theta1 in axis:
        if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL and theta1 >= spec.T:
            skipped += 1
            continue
        _check_parameters(spec, theta1, 1.0)
        lam = _boundary_lambda(spec, theta1)
        capped = not lam <= lambda_cap
        if capped:
            lam = lambda_cap
        while lam > 0 and not joint_set_contains(spec, theta1, lam):
            lam = float(np.nextafter(lam, 0.0))
        if not lam > 0:
            log_message(f"boundary at theta1={theta1} underflows; skipped")
            skipped += 1
            continue
        points.append(BoundaryPoint(theta1=theta1, theta2=lam, capped=capped))

    if skipped:
        log_message(f"{skipped} grid point(s) outside the {spec.model} parameter domain skipped")
    return points


def lifetime_cdf(spec: JointSetSpec, x: float, theta1: float, theta2: float) -> float:
    """P(X <= x) for one lifetime under the joint set's model."""
    _check_parameters(spec, theta1, theta2)
    if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL:
        mu, lam = theta1, theta2
        return -math.expm1(-lam * (x - mu)) if x > mu else 0.0
    if x <= 0:
        return 0.0
    beta, lam = theta1, theta2
    if spec.model == JointSetModel.WEIBULL:
        return -math.expm1(-lam * x**beta)
    return (-math.expm1(-lam * x)) ** beta


def sample_lifetimes(
    spec: JointSetSpec, theta1: float, theta2: float, size: int, rng: np.random.Generator
) -> np.ndarray:
    """`size` rows of n lifetimes each, by inverse-CDF sampling."""
    _check_parameters(spec, theta1, theta2)
    u = rng.random((size, spec.n))
    # -log1p(-u) = -ln(1 - u) keeps u near 0 exact
    exposure = -np.log1p(-u)
    if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL:
        return theta1 + exposure / theta2
    if spec.model == JointSetModel.WEIBULL:
        return (exposure / theta2) ** (1.0 / theta1)
    return -np.log1p(-(u ** (1.0 / theta1))) / theta2


def simulate_no_failure_probability(
    spec: JointSetSpec,
    theta1: float,
    theta2: float,
    draws: int = 100_000,
    seed: Optional[int] = None,
) -> float:
    """Monte Carlo estimate of P(D = 0): the share of draws with all n lifetimes beyond T."""
    if draws < 1:
        raise ValidationError(f"draws must be positive, got {draws}")
    rng = np.random.default_rng(seed)
    lifetimes = sample_lifetimes(spec, theta1, theta2, draws, rng)
    survived = np.all(lifetimes > spec.T, axis=1)
    return float(survived.mean())
