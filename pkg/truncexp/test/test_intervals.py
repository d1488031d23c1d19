import json
import math

import numpy as np
import pytest

from truncexp.errors import (
    ContractError,
    DomainError,
    NoRootError,
    UndefinedMethodError,
    ValidationError,
)
from truncexp.exactdist import ExactDist, cdf
from truncexp.intervals import (
    IntervalMethod,
    IntervalResult,
    Sidedness,
    case_one_upper,
    ci_conditional,
    ci_unconditional,
    equation_residuals,
    solve_monotone,
)
from truncexp.model import CensoredSample, estimate_lambda
from truncexp.montecarlo import generate_sample


def random_samples(count, seed):
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(count):
        n = int(rng.integers(2, 16))
        T = float(rng.choice([0.5, 1.0, 2.0]))
        lam = float(rng.uniform(0.2, 3.0))
        samples.append(generate_sample(n, lam, T, rng))
    return samples


def assert_solved_equations(sample, result):
    lower_residual, upper_residual = equation_residuals(sample, result)
    if result.sided == Sidedness.ONE_SIDED_UPPER:
        assert lower_residual is None
    else:
        assert abs(lower_residual) <= 1e-8
    assert abs(upper_residual) <= 1e-8


@pytest.mark.fast
def test_solve_monotone_exponential():
    root = solve_monotone(lambda lam: math.exp(-lam), 0.5, 0.1, 10.0)
    assert root == pytest.approx(math.log(2.0), abs=1e-7)
    assert root == pytest.approx(0.6931472, abs=1e-7)


@pytest.mark.fast
def test_solve_monotone_on_the_exact_cdf():
    def f(lam):
        return cdf(ExactDist(n=5, T=0.5, lam=lam), 1.0)

    root = solve_monotone(f, 0.5, 0.01, 100.0)
    assert abs(f(root) - 0.5) <= 1e-8


@pytest.mark.fast
def test_solve_monotone_expands_the_bracket_upward():
    root = solve_monotone(lambda lam: math.exp(-lam), 1e-3, 0.1, 1.0, tol=1e-12)
    assert root == pytest.approx(-math.log(1e-3), rel=1e-6)


@pytest.mark.fast
def test_solve_monotone_expands_the_bracket_downward():
    root = solve_monotone(lambda lam: math.exp(-lam), 0.999, 1.0, 2.0)
    assert math.exp(-root) == pytest.approx(0.999, abs=1e-8)


@pytest.mark.fast
def test_solve_monotone_no_root():
    with pytest.raises(NoRootError):
        solve_monotone(lambda lam: math.exp(-lam), 1.5, 0.1, 10.0)


@pytest.mark.fast
def test_solve_monotone_respects_lower_limit():
    with pytest.raises(NoRootError):
        solve_monotone(lambda lam: math.exp(-lam), 0.99, 1.0, 2.0, lower_limit=0.5)


@pytest.mark.fast
def test_solve_monotone_contract_error():
    with pytest.raises(ContractError):
        solve_monotone(lambda lam: lam, 0.5, 0.1, 10.0)


@pytest.mark.fast
@pytest.mark.parametrize("lo,hi", [(0.0, 1.0), (2.0, 1.0), (-1.0, 1.0)])
def test_solve_monotone_bad_bracket(lo, hi):
    with pytest.raises(DomainError):
        solve_monotone(lambda lam: math.exp(-lam), 0.5, lo, hi)


@pytest.mark.fast
@pytest.mark.parametrize(
    "n,T,alpha,expected",
    [(5, 1.0, 0.05, 0.0102587), (10, 2.0, 0.10, 0.0052680)],
)
def test_case_one_examples(n, T, alpha, expected):
    result = ci_unconditional(CensoredSample(n=n, T=T), alpha)
    assert result.lower == 0.0
    assert result.upper == pytest.approx(expected, abs=1e-7)
    assert result.sided == Sidedness.ONE_SIDED_UPPER
    assert result.method == IntervalMethod.UNCONDITIONAL
    assert result.level == pytest.approx(1 - alpha)


@pytest.mark.fast
@pytest.mark.parametrize("n", [1, 5, 20, 50])
@pytest.mark.parametrize("T", [0.1, 1.0, 7.5])
@pytest.mark.parametrize("alpha", [0.01, 0.05, 0.1, 0.5])
def test_case_one_closed_form(n, T, alpha):
    result = ci_unconditional(CensoredSample(n=n, T=T), alpha)
    assert result.upper == -math.log1p(-alpha) / (n * T)
    assert math.exp(-n * result.upper * T) == pytest.approx(1 - alpha, rel=1e-14)


@pytest.mark.fast
def test_case_one_length_decreases_in_n_and_T():
    for T in (0.5, 1.0, 2.0):
        lengths = [case_one_upper(n, T, 0.05) for n in range(1, 30)]
        assert all(b < a for a, b in zip(lengths, lengths[1:]))
    for n in (1, 5, 20):
        lengths = [case_one_upper(n, T, 0.05) for T in np.linspace(0.1, 5.0, 30)]
        assert all(b < a for a, b in zip(lengths, lengths[1:]))


@pytest.mark.fast
def test_case_one_alpha_domain():
    with pytest.raises(DomainError):
        case_one_upper(5, 1.0, 0.0)
    with pytest.raises(DomainError):
        ci_unconditional(CensoredSample(n=5, T=1.0), 1.0)


@pytest.mark.fast
def test_unconditional_interval_two_failures(two_failure_sample):
    result = ci_unconditional(two_failure_sample, 0.05)
    assert result.sided == Sidedness.TWO_SIDED
    assert 0.0 < result.lower < estimate_lambda(two_failure_sample) < result.upper
    assert_solved_equations(two_failure_sample, result)


@pytest.mark.fast
def test_unconditional_interval_field_sample(field_test_sample):
    result = ci_unconditional(field_test_sample, 0.10)
    assert result.lower < estimate_lambda(field_test_sample) < result.upper
    assert_solved_equations(field_test_sample, result)
    wider = ci_unconditional(field_test_sample, 0.01)
    assert wider.lower < result.lower and wider.upper > result.upper


@pytest.mark.fast
def test_conditional_undefined_without_failures(no_failure_sample):
    with pytest.raises(UndefinedMethodError, match="undefined for D=0"):
        ci_conditional(no_failure_sample, 0.05)


@pytest.mark.fast
def test_conditional_interval_residuals(field_test_sample):
    result = ci_conditional(field_test_sample, 0.05)
    assert result.method == IntervalMethod.CONDITIONAL
    assert result.lower < result.upper
    assert_solved_equations(field_test_sample, result)


@pytest.mark.fast
def test_conditional_matches_unconditional_when_atom_negligible():
    sample = CensoredSample.from_statistic(20, 2.0, 18, 9.0)
    lam_hat = estimate_lambda(sample)
    assert math.exp(-20 * lam_hat * 2.0) < 1e-12
    unconditional = ci_unconditional(sample, 0.05)
    conditional = ci_conditional(sample, 0.05)
    assert conditional.lower == pytest.approx(unconditional.lower, rel=1e-5)
    assert conditional.upper == pytest.approx(unconditional.upper, rel=1e-5)


@pytest.mark.fast
def test_conditional_lower_bound_can_be_missing():
    # given D >= 1 the law tends to the one-failure law as lambda -> 0, where
    # P(lambda_hat <= 1/4.9) is about 0.1, far below 0.975
    sample = CensoredSample(n=5, T=1.0, failures=(0.9,))
    with pytest.raises(NoRootError):
        ci_conditional(sample, 0.05)


@pytest.mark.fast
def test_residuals_of_one_sided_interval(no_failure_sample):
    result = ci_unconditional(no_failure_sample, 0.05)
    lower_residual, upper_residual = equation_residuals(no_failure_sample, result)
    assert lower_residual is None
    assert abs(upper_residual) <= 1e-14


@pytest.mark.fast
def test_residual_suite_quick():
    for sample in random_samples(15, seed=11):
        assert_solved_equations(sample, ci_unconditional(sample, 0.05))


@pytest.mark.slow
def test_residual_suite_randomized():
    for sample in random_samples(1000, seed=12345):
        result = ci_unconditional(sample, 0.05)
        assert_solved_equations(sample, result)
        if result.sided == Sidedness.TWO_SIDED:
            assert result.lower < result.upper


@pytest.mark.fast
def test_large_n_interval_solves_its_equations():
    sample = CensoredSample.from_failures(n=30, T=1.0, failures=(0.4, 0.8))
    result = ci_unconditional(sample, 0.05)
    assert result.sided == Sidedness.TWO_SIDED
    assert result.lower < estimate_lambda(sample) < result.upper
    assert_solved_equations(sample, result)


@pytest.mark.slow
@pytest.mark.parametrize(
    "n,failures", [(40, (0.5,)), (50, (0.2, 0.6, 0.9)), (45, (0.1, 0.3, 0.5, 0.7, 0.9))]
)
def test_largest_samples_solve_their_equations(n, failures):
    sample = CensoredSample.from_failures(n=n, T=1.0, failures=failures)
    result = ci_unconditional(sample, 0.05)
    assert result.lower < estimate_lambda(sample) < result.upper
    assert_solved_equations(sample, result)


@pytest.mark.fast
def test_interval_result_validation():
    with pytest.raises(ValidationError):
        IntervalResult(lower=2.0, upper=1.0, level=0.95, method="unconditional", sided="two-sided")
    with pytest.raises(ValidationError):
        IntervalResult(lower=0.0, upper=1.0, level=1.5, method="unconditional", sided="two-sided")
    with pytest.raises(ValidationError):
        IntervalResult(lower=0.0, upper=1.0, level=0.9, method="bootstrap", sided="two-sided")
    with pytest.raises(ValidationError):
        IntervalResult(lower=0.0, upper=1.0, level=0.9, method="bayes", sided="left")


@pytest.mark.fast
def test_interval_result_contains_and_length():
    one_sided = IntervalResult(
        lower=0.0, upper=0.01, level=0.95, method="unconditional", sided="one-sided-upper"
    )
    assert one_sided.contains(0.01)
    assert one_sided.contains(0.005)
    assert not one_sided.contains(0.0)
    assert not one_sided.contains(0.02)
    assert one_sided.length == 0.01

    two_sided = IntervalResult(lower=0.5, upper=2.0, level=0.95, method="bayes", sided="two-sided")
    assert two_sided.contains(0.5) and two_sided.contains(2.0)
    assert not two_sided.contains(0.4)
    assert two_sided.length == 1.5


@pytest.mark.fast
def test_interval_result_json_round_trip(field_test_sample):
    result = ci_unconditional(field_test_sample, 0.05)
    assert IntervalResult.from_dict(json.loads(json.dumps(result.to_dict()))) == result
