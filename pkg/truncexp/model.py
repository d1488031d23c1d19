"""
Time truncated (type-I censored) exponential samples.

n items go on test at time 0 and the test stops at the fixed time T. The D
failures observed in (0, T] are kept in increasing order; the n - D survivors
each contribute T to the total time on test S.
"""

import math
import numbers
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

from .errors import DomainError, ValidationError
from .specfun import log_gamma


@dataclass(frozen=True)
class CensoredSample:
    n: int
    T: float
    failures: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, numbers.Integral) or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.T, numbers.Real) and math.isfinite(self.T) and self.T > 0):
            raise ValidationError(f"T must be a positive finite time, got {self.T!r}")

        object.__setattr__(self, "n", int(self.n))
        failures = tuple(float(x) for x in self.failures)
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "failures", failures)

        if len(failures) > self.n:
            raise ValidationError(f"{len(failures)} failures recorded for only {self.n} items")
        for i, x in enumerate(failures):
            if not (0.0 < x <= self.T):
                raise ValidationError(f"failure #{i + 1} at {x} lies outside (0, T={self.T}]")
            if i > 0 and x <= failures[i - 1]:
                kind = "tie" if x == failures[i - 1] else "out of order"
                raise ValidationError(
                    f"failure #{i + 1} at {x} is {kind} (failure times must strictly increase)"
                )

    @property
    def D(self) -> int:
        return len(self.failures)

    @classmethod
    def from_failures(cls, n: int, T: float, failures: Iterable[float]) -> "CensoredSample":
        return cls(n=n, T=T, failures=tuple(failures))

    @classmethod
    def from_statistic(cls, n: int, T: float, D: int, S: float) -> "CensoredSample":
        """
        Build a sample with the given failure count and total time on test.

        The D failures are spread evenly around their mean S_f / D where
        S_f = S - (n - D) T is the observed failure-time sum.
        """
        if not 0 <= D <= n:
            raise ValidationError(f"D must lie in [0, n={n}], got {D}")
        failure_sum = S - (n - D) * T
        if D == 0:
            if not math.isclose(S, n * T, rel_tol=1e-12):
                raise ValidationError(f"with D = 0 the total time on test must be nT = {n * T}")
            return cls(n=n, T=T)
        mean = failure_sum / D
        if not 0.0 < mean <= T:
            raise ValidationError(f"S = {S} is not attainable with D = {D}, n = {n}, T = {T}")
        spread = min(mean, T - mean, mean / D) * 0.5
        offsets = [(i - (D - 1) / 2.0) for i in range(D)]
        scale = spread / max(1.0, (D - 1) / 2.0)
        return cls(n=n, T=T, failures=tuple(mean + o * scale for o in offsets))

    def scaled(self, c: float) -> "CensoredSample":
        """Change of time unit: every failure time and T multiplied by c > 0."""
        if not c > 0:
            raise DomainError(f"scale factor must be positive, got {c!r}")
        return CensoredSample(n=self.n, T=self.T * c, failures=tuple(x * c for x in self.failures))


@dataclass(frozen=True)
class SufficientStat:
    D: int
    S: float


def sufficient_stat(sample: CensoredSample) -> SufficientStat:
    """(D, S) with S = sum of failure times + (n - D) T."""
    D = sample.D
    S = math.fsum(sample.failures) + (sample.n - D) * sample.T
    return SufficientStat(D=D, S=S)


def log_likelihood(sample: CensoredSample, lam: float) -> float:
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    stat = sufficient_stat(sample)
    if stat.D == 0:
        return -sample.n * lam * sample.T
    # ln n!/(n-D)! through log-gamma so large n never overflows
    log_perm = log_gamma(sample.n + 1.0) - log_gamma(sample.n - stat.D + 1.0)
    return log_perm + stat.D * math.log(lam) - lam * stat.S


def estimate_lambda(sample: CensoredSample) -> float:
    """D / S; exactly 0 when no failure was observed."""
    stat = sufficient_stat(sample)
    if stat.D == 0:
        return 0.0
    return stat.D / stat.S


def mle(sample: CensoredSample) -> Optional[float]:
    """Maximum likelihood estimate of lambda, None when D = 0 (it does not exist)."""
    if sample.D == 0:
        return None
    return estimate_lambda(sample)


def mean_lifetime_estimate(sample: CensoredSample) -> Optional[float]:
    """MLE of the mean lifetime theta = 1 / lambda (S / D), None when D = 0."""
    if sample.D == 0:
        return None
    stat = sufficient_stat(sample)
    return stat.S / stat.D
