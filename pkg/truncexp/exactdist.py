"""
Exact law of the estimator lambda_hat = D / S under type-I censoring.

lambda_hat has an atom e^(-n lambda T) at 0 and, above 1/(nT), a density. For
x > 0

    P(lambda_hat <= x) = e^(-n lambda T)
        + sum_{d=1..n} sum_{k=0..d} C[k,d] Q(d, A(d; x, T[k,d]))

with C[k,d] = (-1)^k binom(n,d) binom(d,k) e^(-lambda T (n-d+k)),
T[k,d] = (n-d+k) T / d and A(m; x, a) = lambda m (1/x - a) for x < 1/a, else 0.
Q is the regularized upper incomplete gamma function.

The terms alternate in sign and their magnitudes add up to about
(1 + 2 e^(-lambda T))^n. When the rounding error bound of the double precision
sum is too large, the sum is redone with mpmath at enough digits to absorb
the cancellation.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Tuple

import numpy as np
from mpmath import mp

from .errors import DomainError, NumericError, ValidationError
from .specfun import gamma_density, log_gamma, reg_upper_gamma
from .utils.log import log_message

MAX_N = 50
_STABILITY_SLACK = 1e-9
# the double sum is trusted when its rounding bound stays below this
_ERROR_TOLERANCE = 1e-10
# relative error of one term C[k,d] Q(d, A), in units of the term
_ROUNDING_FACTOR = 64 * float(np.finfo(float).eps)
_GUARD_DPS = 20
_DEGENERATE_ATOM = 1.0 - 1e-15


@lru_cache(maxsize=None)
def _term_layout(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(d, k, sign, log|binom(n,d) binom(d,k)|) for every term, ordered by d then k."""
    d_list: List[int] = []
    k_list: List[int] = []
    for d in range(1, n + 1):
        for k in range(d + 1):
            d_list.append(d)
            k_list.append(k)
    d_idx = np.array(d_list, dtype=float)
    k_idx = np.array(k_list, dtype=float)
    sign = np.where(k_idx % 2 == 0, 1.0, -1.0)
    # binom(n,d) binom(d,k) = n! / ((n-d)! k! (d-k)!)
    log_binom = (
        log_gamma(n + 1.0)
        - log_gamma(n - d_idx + 1.0)
        - log_gamma(k_idx + 1.0)
        - log_gamma(d_idx - k_idx + 1.0)
    )
    for arr in (d_idx, k_idx, sign, log_binom):
        arr.setflags(write=False)
    return d_idx, k_idx, sign, log_binom


@dataclass(frozen=True)
class ExactDist:
    """Law of lambda_hat for n items, truncation time T and true rate lam."""

    n: int
    T: float
    lam: float
    shapes: np.ndarray = field(init=False, repr=False, compare=False)
    coefficients: np.ndarray = field(init=False, repr=False, compare=False)
    thresholds: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if self.n > MAX_N:
            raise ValidationError(
                f"n = {self.n} exceeds {MAX_N}, the largest sample size of the exact law"
            )
        if not (math.isfinite(self.T) and self.T > 0):
            raise DomainError(f"T must be positive, got {self.T!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be positive, got {self.lam!r}")

        d_idx, k_idx, sign, log_binom = _term_layout(int(self.n))
        lam_t = self.lam * self.T
        coefficients = sign * np.exp(log_binom - lam_t * (self.n - d_idx + k_idx))
        thresholds = (self.n - d_idx + k_idx) * self.T / d_idx
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "shapes", d_idx)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "thresholds", thresholds)


def point_mass_at_zero(dist: ExactDist) -> float:
    """P(lambda_hat = 0) = P(D = 0) = e^(-n lambda T)."""
    return math.exp(-dist.n * dist.lam * dist.T)


def support_lower(dist: ExactDist) -> float:
    """Smallest positive value lambda_hat can take, 1 / (nT)."""
    return 1.0 / (dist.n * dist.T)


def _threshold_args(dist: ExactDist, x: float) -> np.ndarray:
    # A(d; x, a) = lam d (1/x - a) while x a < 1, else 0
    a = dist.thresholds
    gap = (1.0 - x * a) / x
    return np.where(x * a < 1.0, dist.lam * dist.shapes * gap, 0.0)


def _rounding_bound(terms: np.ndarray) -> Tuple[float, float]:
    """(sum of |terms|, bound on the rounding error of their double precision sum)."""
    magnitude = math.fsum(np.abs(terms).tolist())
    return magnitude, _ROUNDING_FACTOR * magnitude


def _working_dps(magnitude: float, scale: float) -> int:
    # digits lost to cancellation, plus a double's worth of digits and guard digits
    lost = math.log10(max(magnitude / scale, 1.0))
    return _GUARD_DPS + int(math.ceil(lost))


def _erlang_survival_mp(shape: int, z):
    """Q(shape, z) = e^-z sum_{j < shape} z^j / j! in mpmath arithmetic."""
    term = mp.mpf(1)
    total = mp.mpf(1)
    for j in range(1, shape):
        term *= z / j
        total += term
    return mp.exp(-z) * total


def _erlang_density_mp(shape: int, rate, y):
    """Gamma(shape, rate) density at y > 0 in mpmath arithmetic."""
    return rate**shape * y ** (shape - 1) * mp.exp(-rate * y) / mp.factorial(shape - 1)


def _extended_sum(dist: ExactDist, x: float, dps: int, density: bool) -> float:
    """
    The double sum in mpmath at `dps` digits, with exact binomials.

    Evaluates the cdf terms C[k,d] Q(d, A) or, with density=True, the pdf
    terms C[k,d] g(1/x - T[k,d]; lam d, d) / x^2.
    """
    n = dist.n
    with mp.workdps(dps):
        lam, T, x_mp = mp.mpf(dist.lam), mp.mpf(dist.T), mp.mpf(x)
        survival = mp.exp(-lam * T)
        total = mp.mpf(0)
        for d in range(1, n + 1):
            outer = math.comb(n, d)
            for k in range(d + 1):
                m = n - d + k
                # 1/x - T[k,d], scaled by d
                gap = d / x_mp - m * T
                if density:
                    if gap <= 0:
                        continue
                    factor = _erlang_density_mp(d, lam * d, gap / d)
                else:
                    factor = _erlang_survival_mp(d, lam * gap) if gap > 0 else mp.mpf(1)
                term = outer * math.comb(d, k) * survival**m * factor
                total += -term if k % 2 else term
        if density:
            total /= x_mp * x_mp
        return float(total)


def _accurate_sum(
    dist: ExactDist, x: float, terms: np.ndarray, scale: float, density: bool
) -> float:
    """
    Sum the alternating terms, falling back to extended precision when the
    double precision rounding bound exceeds _ERROR_TOLERANCE * scale.
    """
    raw = math.fsum(terms.tolist())
    magnitude, bound = _rounding_bound(terms)
    if bound <= _ERROR_TOLERANCE * max(scale, abs(raw) if density else 0.0):
        return raw
    dps = _working_dps(magnitude, scale)
    log_message(
        f"alternating sum bound {bound:.3g} at x={x} for n={dist.n}, T={dist.T}, "
        f"lambda={dist.lam}; evaluating at {dps} digits",
        level=logging.DEBUG,
    )
    return _extended_sum(dist, x, dps, density)


def _positive_part(dist: ExactDist, x: float, scale: float = 1.0) -> float:
    """
    The double sum of the cdf, i.e. P(0 < lambda_hat <= x), with an error
    below _ERROR_TOLERANCE * scale.
    """
    terms = dist.coefficients * reg_upper_gamma(dist.shapes, _threshold_args(dist, x))
    return _accurate_sum(dist, x, terms, scale, density=False)


def _check_stability(raw: float, what: str, dist: ExactDist, x: float) -> None:
    if raw < -_STABILITY_SLACK or raw > 1.0 + _STABILITY_SLACK:
        log_message(
            f"{what} before clamping is {raw!r} at x={x} for n={dist.n}, T={dist.T}, "
            f"lambda={dist.lam}; alternating sum lost precision",
            level=logging.WARNING,
        )


def _clamp(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def cdf(dist: ExactDist, x: float) -> float:
    """P(lambda_hat <= x) for x >= 0."""
    if not x >= 0:
        raise DomainError(f"cdf requires x >= 0, got {x!r}")
    atom = point_mass_at_zero(dist)
    if x == 0:
        return atom
    raw = atom + _positive_part(dist, x)
    _check_stability(raw, "cdf", dist, x)
    return _clamp(raw)


def pdf(dist: ExactDist, x: float) -> float:
    """Density of the continuous part of lambda_hat; 0 below 1/(nT)."""
    if not x >= support_lower(dist):
        return 0.0
    rates = dist.lam * dist.shapes
    g = gamma_density(1.0 / x - dist.thresholds, rates, dist.shapes)
    value = _accurate_sum(dist, x, dist.coefficients * g / (x * x), 1.0, density=True)
    return max(value, 0.0)


def conditional_cdf(dist: ExactDist, x: float) -> float:
    """P(lambda_hat <= x | D > 0) for x > 0."""
    if not x > 0:
        raise DomainError(f"conditional_cdf requires x > 0, got {x!r}")
    atom = point_mass_at_zero(dist)
    if atom >= _DEGENERATE_ATOM:
        raise NumericError(
            f"P(D > 0) = {1.0 - atom:.3g} is too small to condition on "
            f"(n={dist.n}, T={dist.T}, lambda={dist.lam})"
        )
    # the double sum is already P(0 < lambda_hat <= x); divide by P(D > 0)
    mass = -math.expm1(-dist.n * dist.lam * dist.T)
    raw = _positive_part(dist, x, scale=mass) / mass
    _check_stability(raw, "conditional cdf", dist, x)
    return _clamp(raw)


def cdf_in_lambda(n: int, T: float, b: float, lambdas: Iterable[float]) -> List[float]:
    """lambda -> P_lambda(lambda_hat <= b) on a grid of rates (decreasing in lambda)."""
    return [cdf(ExactDist(n=n, T=T, lam=float(lam)), b) for lam in lambdas]
