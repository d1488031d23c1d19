import math

import pytest
from scipy import optimize

from truncexp.errors import DomainError, ValidationError
from truncexp.model import (
    CensoredSample,
    estimate_lambda,
    log_likelihood,
    mean_lifetime_estimate,
    mle,
    sufficient_stat,
)


@pytest.mark.fast
def test_sample_from_fixture(two_failure_sample):
    assert two_failure_sample.n == 3
    assert two_failure_sample.T == 2.0
    assert two_failure_sample.D == 2
    assert two_failure_sample.failures == (0.5, 1.0)


@pytest.mark.fast
@pytest.mark.parametrize(
    "n,T,failures,D,S",
    [
        (3, 2.0, (0.5, 1.0), 2, 3.5),
        (5, 1.0, (), 0, 5.0),
        (2, 1.0, (0.3, 0.7), 2, 1.0),
    ],
)
def test_sufficient_stat(n, T, failures, D, S):
    stat = sufficient_stat(CensoredSample(n=n, T=T, failures=failures))
    assert stat.D == D
    assert stat.S == pytest.approx(S, abs=1e-15)


@pytest.mark.fast
def test_failure_at_T_is_accepted():
    sample = CensoredSample(n=2, T=1.0, failures=(0.4, 1.0))
    assert sample.D == 2


@pytest.mark.fast
@pytest.mark.parametrize(
    "n,T,failures,message",
    [
        (0, 1.0, (), "n must be a positive integer"),
        (2.5, 1.0, (), "n must be a positive integer"),
        (True, 1.0, (), "n must be a positive integer"),
        (3, 0.0, (), "T must be a positive finite time"),
        (3, float("inf"), (), "T must be a positive finite time"),
        (1, 1.0, (0.2, 0.4), "2 failures recorded for only 1 items"),
        (3, 2.0, (0.5, 2.5), "outside (0, T=2.0]"),
        (3, 2.0, (0.0,), "outside (0, T=2.0]"),
        (3, 2.0, (1.0, 0.5), "out of order"),
        (3, 2.0, (0.5, 0.5), "tie"),
    ],
)
def test_sample_validation(n, T, failures, message):
    with pytest.raises(ValidationError, match=message.replace("(", r"\(").replace("]", r"\]")):
        CensoredSample(n=n, T=T, failures=failures)


@pytest.mark.fast
def test_log_likelihood_values(two_failure_sample, no_failure_sample):
    assert log_likelihood(no_failure_sample, 1.0) == pytest.approx(-5.0)
    assert log_likelihood(two_failure_sample, 1.0) == pytest.approx(math.log(6.0) - 3.5)
    assert log_likelihood(two_failure_sample, 1.0) == pytest.approx(-1.7082405, abs=1e-7)


@pytest.mark.fast
@pytest.mark.parametrize("lam", [0.0, -1.0])
def test_log_likelihood_rejects_nonpositive_rate(two_failure_sample, lam):
    with pytest.raises(DomainError):
        log_likelihood(two_failure_sample, lam)


@pytest.mark.fast
def test_log_likelihood_large_n_does_not_overflow():
    sample = CensoredSample(n=500, T=1.0, failures=(0.1, 0.2, 0.3))
    assert math.isfinite(log_likelihood(sample, 0.01))


@pytest.mark.fast
def test_likelihood_maximized_at_estimate(field_test_sample):
    result = optimize.minimize_scalar(
        lambda lam: -log_likelihood(field_test_sample, lam),
        bounds=(1e-6, 50.0),
        method="bounded",
        options={"xatol": 1e-10},
    )
    assert result.x == pytest.approx(estimate_lambda(field_test_sample), rel=1e-6)


@pytest.mark.fast
def test_estimate_lambda(two_failure_sample, no_failure_sample):
    assert estimate_lambda(two_failure_sample) == pytest.approx(2 / 3.5)
    assert estimate_lambda(two_failure_sample) == pytest.approx(0.5714286, abs=1e-7)
    assert estimate_lambda(no_failure_sample) == 0.0


@pytest.mark.fast
def test_estimate_when_everything_failed():
    failures = (0.1, 0.25, 0.6, 0.9)
    sample = CensoredSample(n=4, T=1.0, failures=failures)
    assert estimate_lambda(sample) == pytest.approx(4 / sum(failures))


@pytest.mark.fast
def test_mle_and_mean_lifetime(two_failure_sample, no_failure_sample):
    assert mle(two_failure_sample) == estimate_lambda(two_failure_sample)
    assert mean_lifetime_estimate(two_failure_sample) == pytest.approx(1.75)
    assert mle(no_failure_sample) is None
    assert mean_lifetime_estimate(no_failure_sample) is None


@pytest.mark.fast
def test_positive_estimate_never_below_support(field_test_sample):
    n, T = field_test_sample.n, field_test_sample.T
    assert estimate_lambda(field_test_sample) >= 1.0 / (n * T)
    one_late_failure = CensoredSample(n=n, T=T, failures=(T,))
    assert estimate_lambda(one_late_failure) == pytest.approx(1.0 / (n * T))


@pytest.mark.fast
@pytest.mark.parametrize("c", [0.1, 3.0, 1000.0])
def test_scale_equivariance(field_test_sample, c):
    scaled = field_test_sample.scaled(c)
    assert scaled.T == pytest.approx(field_test_sample.T * c)
    assert estimate_lambda(scaled) == pytest.approx(estimate_lambda(field_test_sample) / c)


@pytest.mark.fast
def test_scaled_rejects_nonpositive_factor(field_test_sample):
    with pytest.raises(DomainError):
        field_test_sample.scaled(0.0)


@pytest.mark.fast
def test_rebuilt_from_statistic_keeps_estimate(field_test_sample):
    stat = sufficient_stat(field_test_sample)
    n, T = field_test_sample.n, field_test_sample.T
    rebuilt = CensoredSample.from_statistic(n, T, stat.D, stat.S)
    assert rebuilt.D == stat.D
    assert sufficient_stat(rebuilt).S == pytest.approx(stat.S, rel=1e-12)
    assert estimate_lambda(rebuilt) == pytest.approx(estimate_lambda(field_test_sample), rel=1e-12)


@pytest.mark.fast
def test_from_statistic_no_failures():
    sample = CensoredSample.from_statistic(5, 1.0, 0, 5.0)
    assert sample.D == 0
    with pytest.raises(ValidationError):
        CensoredSample.from_statistic(5, 1.0, 0, 4.0)


@pytest.mark.fast
def test_from_statistic_rejects_unattainable_total():
    with pytest.raises(ValidationError):
        CensoredSample.from_statistic(3, 1.0, 2, 0.5)
