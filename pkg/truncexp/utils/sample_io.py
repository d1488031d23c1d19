"""
Sample files, picked by extension.

JSON (.json):

    {"n": 3, "T": 2.0, "failures": [0.5, 1.0]}

CSV (.csv), two header lines then one failure time per line:

    n,3
    T,2.0
    0.5
    1.0
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Union

from ..errors import ValidationError
from ..model import CensoredSample

PathLike = Union[str, Path]


def _from_fields(fields: Dict[str, Any], where: str) -> CensoredSample:
    for key in ("n", "T"):
        if key not in fields:
            raise ValidationError(f"{where}: missing field {key!r}")
    failures = fields.get("failures", [])
    if not isinstance(failures, list):
        raise ValidationError(f"{where}: 'failures' must be a list")
    if isinstance(fields["n"], bool) or not isinstance(fields["n"], int):
        raise ValidationError(f"{where}: n must be an integer, got {fields['n']!r}")
    try:
        return CensoredSample(n=fields["n"], T=fields["T"], failures=tuple(failures))
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{where}: {e}")


def _read_json(path: Path) -> CensoredSample:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}:{e.lineno}: invalid JSON: {e.msg}")
    if not isinstance(data, dict):
        raise ValidationError(f"{path}:1: expected an object with n, T and failures")
    return _from_fields(data, str(path))


def _read_csv(path: Path) -> CensoredSample:
    header: Dict[str, Any] = {}
    failures: List[float] = []
    with path.open(newline="") as handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            where = f"{path}:{lineno}"
            if len(header) < 2:
                expected = "n" if not header else "T"
                if len(cells) != 2 or cells[0] != expected:
                    raise ValidationError(f"{where}: expected header line '{expected},<value>'")
                try:
                    header[expected] = int(cells[1]) if expected == "n" else float(cells[1])
                except ValueError:
                    raise ValidationError(f"{where}: bad value {cells[1]!r} for {expected}")
                continue

            if len(cells) != 1:
                raise ValidationError(f"{where}: expected one failure time per line")
            try:
                failures.append(float(cells[0]))
            except ValueError:
                raise ValidationError(f"{where}: {cells[0]!r} is not a failure time")
            # validate as we go so the message points at the offending line
            try:
                CensoredSample(n=len(failures), T=header["T"], failures=tuple(failures))
            except ValidationError as e:
                raise ValidationError(f"{where}: {e}")
            if len(failures) > header["n"]:
                raise ValidationError(f"{where}: more failures than n = {header['n']}")

    if len(header) != 2:
        raise ValidationError(f"{path}: expected header lines 'n,<value>' and 'T,<value>'")
    header["failures"] = failures
    return _from_fields(header, str(path))


def read_sample(path: PathLike) -> CensoredSample:
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"{path}: no such file")
    suffix = path.suffix.lower()
    if suffix == ".json":
        return _read_json(path)
    if suffix == ".csv":
        return _read_csv(path)
    raise ValidationError(f"{path}: unknown sample file type {suffix!r} (use .json or .csv)")

