"""
Special-function kernels used by every other module.

The regularized upper incomplete gamma function

    Q(a, z) = (1 / Gamma(a)) * integral_z^inf t^(a-1) e^(-t) dt

is evaluated with the lower series when z < a + 1 and with the modified Lentz
continued fraction otherwise. Integer shapes, which is all the exact
distribution of the estimator ever needs, take the finite Poisson-tail sum
Q(d, z) = e^(-z) * sum_{j<d} z^j / j!, vectorized over numpy arrays.

All functions accept scalars or numpy arrays; scalar input gives a float.
"""

import logging
import math
from typing import Union

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, NumericError
from .utils.log import log_message

ArrayLike = Union[float, np.ndarray]

_EPS = 1e-15
_FPMIN = 1e-300
_MAX_ITER = 10000
_MAX_INVERSE_ITER = 200
_ERLANG_MAX_SHAPE = 200


def log_gamma(a: ArrayLike) -> ArrayLike:
    """Natural log of the gamma function, defined for a > 0."""
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"log_gamma requires a > 0, got {a!r}")
    result = gammaln(arr)
    return float(result) if np.ndim(result) == 0 else result


def _lower_series(a: float, z: float) -> float:
    """Regularized lower gamma P(a, z) by its power series (z < a + 1)."""
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= z / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise NumericError(f"Series for P({a}, {z}) did not converge")
    # log space keeps a ~ 1e-3 (where 1/a and Gamma(a) are both ~1e3) exact
    return math.exp(a * math.log(z) - z - log_gamma(a) + math.log(total))


def _upper_fraction(a: float, z: float) -> float:
    """Regularized upper gamma Q(a, z) by the Lentz continued fraction."""
    b = z + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise NumericError(f"Continued fraction for Q({a}, {z}) did not converge")
    return math.exp(a * math.log(z) - z - log_gamma(a) + math.log(h))


def _reg_upper_gamma_scalar(a: float, z: float) -> float:
    if z == 0.0:
        return 1.0
    if z < a + 1.0:
        value = 1.0 - _lower_series(a, z)
    else:
        value = _upper_fraction(a, z)
    return min(max(value, 0.0), 1.0)


def _erlang_survival(shape: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Q(d, z) for integer d as the Poisson tail e^-z sum_{j<d} z^j/j!."""
    j = np.arange(int(shape.max()), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_terms = j[None, :] * np.log(z)[:, None] - z[:, None] - gammaln(j + 1.0)[None, :]
    # j = 0 term is e^-z, also when z = 0 where 0 * log(0) is undefined
    log_terms[:, 0] = -z
    terms = np.where(j[None, :] < shape[:, None], np.exp(log_terms), 0.0)
    return np.minimum(terms.sum(axis=1), 1.0)


def reg_upper_gamma(a: ArrayLike, z: ArrayLike) -> ArrayLike:
    """Regularized upper incomplete gamma Q(a, z) for a > 0, z >= 0."""
    a_arr = np.asarray(a, dtype=float)
    z_arr = np.asarray(z, dtype=float)
    if np.any(~(a_arr > 0)):
        raise DomainError(f"reg_upper_gamma requires a > 0, got {a!r}")
    if np.any(~(z_arr >= 0)):
        raise DomainError(f"reg_upper_gamma requires z >= 0, got {z!r}")

    if a_arr.ndim == 0 and z_arr.ndim == 0:
        return _reg_upper_gamma_scalar(float(a_arr), float(z_arr))

    a_b, z_b = np.broadcast_arrays(a_arr, z_arr)
    out = np.empty(a_b.shape)
    erlang = (a_b == np.floor(a_b)) & (a_b <= _ERLANG_MAX_SHAPE)
    if erlang.any():
        out[erlang] = _erlang_survival(a_b[erlang], z_b[erlang])
    general = ~erlang
    if general.any():
        out[general] = [
            _reg_upper_gamma_scalar(float(s), float(x))
            for s, x in zip(a_b[general], z_b[general])
        ]
    return out


def _bracket_midpoint(lo: float, hi: float) -> float:
    # geometric while the bracket spans orders of magnitude
    if lo > 0.0 and hi > 4.0 * lo:
        return math.sqrt(lo * hi)
    return 0.5 * (lo + hi)


def inv_reg_upper_gamma(a: float, p: float, tol: float = 1e-10) -> float:
    """
    Solve Q(a, z) = p for z >= 0.

    Safeguarded Newton iteration inside a bisection bracket that starts at
    [0, a + 20 * max(1, sqrt(a))] and is doubled upward until it encloses the
    root. The residual tolerance is relative to min(p, 1 - p), so tail
    probabilities are resolved as accurately as central ones.

    Returns 0.0 when the root is below the smallest positive double, which
    happens for shapes close to 0 and p close to 1.
    """
    if not a > 0:
        raise DomainError(f"inv_reg_upper_gamma requires a > 0, got {a!r}")
    if not 0.0 < p <= 1.0:
        raise DomainError(f"inv_reg_upper_gamma requires p in (0, 1], got {p!r}")
    if p == 1.0:
        return 0.0

    residual_tol = tol * min(p, 1.0 - p)
    lo = 0.0
    hi = a + 20.0 * max(1.0, math.sqrt(a))
    for _ in range(100):
        if _reg_upper_gamma_scalar(a, hi) <= p:
            break
        lo = hi
        hi *= 2.0
    else:
        raise NumericError(f"Could not bracket Q({a}, z) = {p}")

    # small-z start from P(a, z) ~ z^a / Gamma(a + 1)
    log_start = (math.log1p(-p) + log_gamma(a + 1.0)) / a
    z = math.exp(min(log_start, 700.0))
    if z == 0.0:
        log_message(f"Root of Q({a}, z) = {p} underflows; returning 0", logging.DEBUG)
        return 0.0
    if not lo < z < hi:
        z = _bracket_midpoint(lo, hi)

    log_gamma_a = log_gamma(a)
    for _ in range(_MAX_INVERSE_ITER):
        residual = _reg_upper_gamma_scalar(a, z) - p
        if abs(residual) <= residual_tol:
            return z
        if residual > 0.0:
            lo = z
        else:
            hi = z
        density = math.exp((a - 1.0) * math.log(z) - z - log_gamma_a)
        z_next = z + residual / density if density > 0.0 else math.nan
        if not (lo < z_next < hi):
            z_next = _bracket_midpoint(lo, hi)
        if abs(z_next - z) <= 4.0 * np.finfo(float).eps * z:
            return z_next
        z = z_next

    residual = _reg_upper_gamma_scalar(a, z) - p
    if abs(residual) <= tol:
        return z
    raise NumericError(f"inv_reg_upper_gamma({a}, {p}) did not converge")


def gamma_density(x: ArrayLike, rate: ArrayLike, shape: ArrayLike) -> ArrayLike:
    """Gamma density (rate^shape / Gamma(shape)) x^(shape-1) e^(-rate x); 0 for x <= 0."""
    rate_arr = np.asarray(rate, dtype=float)
    shape_arr = np.asarray(shape, dtype=float)
    if np.any(~(rate_arr > 0)):
        raise DomainError(f"gamma_density requires rate > 0, got {rate!r}")
    if np.any(~(shape_arr > 0)):
        raise DomainError(f"gamma_density requires shape > 0, got {shape!r}")

    x_b, rate_b, shape_b = np.broadcast_arrays(np.asarray(x, dtype=float), rate_arr, shape_arr)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_g = (
            shape_b * np.log(rate_b)
            - gammaln(shape_b)
            + (shape_b - 1.0) * np.log(x_b)
            - rate_b * x_b
        )
        out = np.where(x_b > 0, np.exp(log_g), 0.0)
    return float(out) if out.ndim == 0 else out
