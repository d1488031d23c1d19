import pytest

from truncexp.errors import ValidationError
from truncexp.model import CensoredSample
from truncexp.utils.sample_io import read_sample


@pytest.mark.fast
def test_read_json_fixture(test_data_dir, two_failure_sample):
    assert read_sample(test_data_dir / "sample_two_failures.json") == two_failure_sample


@pytest.mark.fast
def test_read_json_without_failures_field(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text('{"n": 4, "T": 1.5}')
    assert read_sample(path) == CensoredSample(n=4, T=1.5)


@pytest.mark.fast
def test_read_csv_with_blank_lines(tmp_path):
    path = tmp_path / "sample.csv"
    path.write_text("n,3\n\nT,2.0\n0.5\n\n1.0\n")
    assert read_sample(path) == CensoredSample(n=3, T=2.0, failures=(0.5, 1.0))


@pytest.mark.fast
def test_failure_beyond_T_is_rejected(test_data_dir):
    with pytest.raises(ValidationError, match="outside"):
        read_sample(test_data_dir / "sample_failure_beyond_T.json")


@pytest.mark.fast
def test_invalid_json_reports_the_line(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "n": 3,\n  oops\n}\n')
    with pytest.raises(ValidationError, match=r"broken.json:3: invalid JSON"):
        read_sample(path)


@pytest.mark.fast
@pytest.mark.parametrize(
    "text,message",
    [
        ("T,2\nn,3\n", r"sample.csv:1: expected header line 'n,<value>'"),
        ("n,three\nT,2\n", r"sample.csv:1: bad value"),
        ("n,3\nT,2.0\nabc\n", r"sample.csv:3: 'abc' is not a failure time"),
        ("n,3\nT,2.0\n0.5\n2.5\n", r"sample.csv:4: .*outside"),
        ("n,3\nT,2.0\n0.5\n0.4\n", r"sample.csv:4: .*out of order"),
        ("n,1\nT,2.0\n0.5\n0.7\n", r"sample.csv:4: more failures than n = 1"),
        ("n,3\nT,2.0\n0.5,0.7\n", r"sample.csv:3: expected one failure time per line"),
        ("n,3\n", r"expected header lines"),
    ],
)
def test_invalid_csv_reports_the_line(tmp_path, text, message):
    path = tmp_path / "sample.csv"
    path.write_text(text)
    with pytest.raises(ValidationError, match=message):
        read_sample(path)


@pytest.mark.fast
@pytest.mark.parametrize(
    "text,message",
    [
        ("[1, 2]", "expected an object"),
        ('{"T": 1.0}', "missing field 'n'"),
        ('{"n": 3.0, "T": 1.0}', "n must be an integer"),
        ('{"n": 3, "T": 1.0, "failures": 0.5}', "must be a list"),
        ('{"n": 3, "T": -1.0}', "T must be a positive finite time"),
    ],
)
def test_invalid_json_fields(tmp_path, text, message):
    path = tmp_path / "sample.json"
    path.write_text(text)
    with pytest.raises(ValidationError, match=message):
        read_sample(path)


@pytest.mark.fast
def test_unknown_file_type(tmp_path):
    (tmp_path / "sample.txt").write_text("3")
    with pytest.raises(ValidationError, match="unknown sample file type"):
        read_sample(tmp_path / "sample.txt")


@pytest.mark.fast
def test_missing_file(tmp_path):
    with pytest.raises(ValidationError, match="no such file"):
        read_sample(tmp_path / "absent.json")
