import pytest

from truncexp.utils.display import get_display_name


@pytest.mark.fast
@pytest.mark.parametrize(
    "tag,expected",
    [
        ("unconditional", "CI (unconditional)"),
        ("conditional", "CI (conditional on D > 0)"),
        ("bayes", "CRI (gamma prior)"),
        ("two-param-exponential", "Two-parameter exponential"),
        ("weibull", "Weibull"),
        ("generalized-exponential", "Generalized exponential"),
    ],
)
def test_known_tags(tag, expected):
    assert get_display_name(tag) == expected


@pytest.mark.fast
def test_unknown_tag_titleized():
    assert get_display_name("log-normal") == "Log Normal"
    assert get_display_name("another_one") == "Another One"
