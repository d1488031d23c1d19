import math

import pytest
from scipy import stats

from truncexp.bayes import (
    DEFAULT_PRIOR,
    GammaPrior,
    bayes_estimate,
    credible_interval,
    posterior,
    posterior_cdf,
    posterior_mass,
)
from truncexp.errors import DomainError
from truncexp.intervals import IntervalMethod, Sidedness
from truncexp.model import CensoredSample, estimate_lambda


@pytest.mark.fast
def test_default_prior():
    assert DEFAULT_PRIOR.a == 0.001
    assert DEFAULT_PRIOR.b == 0.001
    assert DEFAULT_PRIOR.mean == pytest.approx(1.0)


@pytest.mark.fast
def test_posterior_parameters(two_failure_sample):
    assert posterior(two_failure_sample, GammaPrior(1.0, 1.0)) == GammaPrior(3.0, 4.5)


@pytest.mark.fast
def test_bayes_estimate(two_failure_sample, no_failure_sample):
    assert bayes_estimate(two_failure_sample, GammaPrior(1.0, 1.0)) == pytest.approx(3 / 4.5)
    assert bayes_estimate(no_failure_sample, DEFAULT_PRIOR) == pytest.approx(0.001 / 5.001)


@pytest.mark.fast
def test_vague_prior_estimate_approaches_mle(field_test_sample):
    vague = GammaPrior(1e-9, 1e-9)
    expected = estimate_lambda(field_test_sample)
    assert bayes_estimate(field_test_sample, vague) == pytest.approx(expected, rel=1e-7)


@pytest.mark.fast
def test_one_failure_closed_form():
    # posterior shape ~1: Q(1, z) = e^-z, so the bounds are -ln(p) / (b + S)
    sample = CensoredSample(n=5, T=1.0, failures=(0.9,))
    result = credible_interval(sample, GammaPrior(1e-12, 1e-12), 0.05)
    assert result.lower == pytest.approx(-math.log(0.975) / 4.9, rel=1e-8)
    assert result.upper == pytest.approx(-math.log(0.025) / 4.9, rel=1e-8)


@pytest.mark.fast
@pytest.mark.parametrize("alpha", [0.01, 0.05, 0.2])
def test_credible_interval_mass_and_tails(field_test_sample, alpha):
    prior = GammaPrior(2.0, 1.0)
    result = credible_interval(field_test_sample, prior, alpha)
    assert result.method == IntervalMethod.BAYES
    assert result.sided == Sidedness.TWO_SIDED
    assert result.level == pytest.approx(1 - alpha)
    mass = posterior_mass(field_test_sample, prior, result.lower, result.upper)
    assert mass == pytest.approx(1 - alpha, abs=1e-9)
    assert posterior_cdf(field_test_sample, prior, result.lower) == pytest.approx(
        alpha / 2, abs=1e-9
    )
    assert 1 - posterior_cdf(field_test_sample, prior, result.upper) == pytest.approx(
        alpha / 2, abs=1e-9
    )


@pytest.mark.fast
def test_credible_interval_against_scipy(field_test_sample):
    prior = GammaPrior(2.0, 1.0)
    post = posterior(field_test_sample, prior)
    result = credible_interval(field_test_sample, prior, 0.05)
    law = stats.gamma(a=post.a, scale=1 / post.b)
    assert result.lower == pytest.approx(law.ppf(0.025), rel=1e-8)
    assert result.upper == pytest.approx(law.ppf(0.975), rel=1e-8)


@pytest.mark.fast
def test_credible_interval_without_failures(no_failure_sample):
    result = credible_interval(no_failure_sample, DEFAULT_PRIOR, 0.05)
    assert result.lower == 0.0
    assert 0.0 < result.upper < math.inf
    assert result.contains(0.0)


@pytest.mark.fast
def test_credible_interval_narrows_with_alpha(two_failure_sample):
    wide = credible_interval(two_failure_sample, DEFAULT_PRIOR, 0.01)
    narrow = credible_interval(two_failure_sample, DEFAULT_PRIOR, 0.2)
    assert wide.lower < narrow.lower < narrow.upper < wide.upper


@pytest.mark.fast
@pytest.mark.parametrize(
    "a,b", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (float("nan"), 1.0), (1.0, float("inf"))]
)
def test_prior_rejects_bad_parameters(a, b):
    with pytest.raises(DomainError):
        GammaPrior(a, b)


@pytest.mark.fast
def test_prior_rejects_non_numbers():
    with pytest.raises(DomainError):
        GammaPrior("1", 1.0)


@pytest.mark.fast
def test_domain_errors(two_failure_sample):
    with pytest.raises(DomainError):
        credible_interval(two_failure_sample, DEFAULT_PRIOR, 0.0)
    with pytest.raises(DomainError):
        posterior_cdf(two_failure_sample, DEFAULT_PRIOR, -1.0)
    with pytest.raises(DomainError):
        posterior_mass(two_failure_sample, DEFAULT_PRIOR, 2.0, 1.0)
