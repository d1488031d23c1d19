import json
import logging
from pathlib import Path

import pytest

from truncexp.model import CensoredSample
from truncexp.utils.log import LOG_TAG


@pytest.fixture(autouse=True)
def _reset_log_handlers():
    """Drop handlers bound to a previous test's (closed) captured stderr."""
    yield
    logger = logging.getLogger(LOG_TAG)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


@pytest.fixture
def test_data_dir():
    """Return the path to test data directory."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def two_failure_data(test_data_dir):
    """n=3, T=2 with failures at 0.5 and 1.0 (D=2, S=3.5)."""
    with open(test_data_dir / "sample_two_failures.json", "r") as f:
        return json.load(f)


@pytest.fixture
def two_failure_sample(two_failure_data):
    return CensoredSample(
        n=two_failure_data["n"],
        T=two_failure_data["T"],
        failures=tuple(two_failure_data["failures"]),
    )


@pytest.fixture
def no_failure_sample(test_data_dir):
    """n=5, T=1 with no failure observed."""
    with open(test_data_dir / "sample_no_failures.json", "r") as f:
        data = json.load(f)
    return CensoredSample(n=data["n"], T=data["T"], failures=tuple(data["failures"]))


@pytest.fixture
def field_test_sample(test_data_dir):
    """n=10, T=1 with seven failures."""
    with open(test_data_dir / "sample_field_test.json", "r") as f:
        data = json.load(f)
    return CensoredSample(n=data["n"], T=data["T"], failures=tuple(data["failures"]))


@pytest.fixture
def simulate_config_path(test_data_dir):
    return test_data_dir / "simulate_config.json"
