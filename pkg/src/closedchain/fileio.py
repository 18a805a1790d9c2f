"""Flat-file formats: JSON chain specs and cube points, CSV angle tables."""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import TextIO

import numpy as np
from numpy.typing import NDArray

from closedchain.chain import ChainSpec
from closedchain.errors import ChainError, InputError
from closedchain.semidiagonal import CubePoint

_HEADER = re.compile(r"^(beta|alpha)_(\d+)$")


def load_chain(path: str | Path) -> ChainSpec:
    """Read ``{"links": [a_1, ..., a_n]}``."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read chain file {path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("links"), list):
        raise InputError(f"{path}: expected an object with a 'links' list")
    links = data["links"]
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in links):
        raise InputError(f"{path}: links must be numbers")
    try:
        return ChainSpec(links)
    except ChainError as exc:
        raise InputError(f"{path}: {exc}") from exc


def save_chain(path: str | Path, chain: ChainSpec) -> None:
    Path(path).write_text(json.dumps({"links": list(chain.links)}) + "\n")


def load_cube_point(spec: str) -> CubePoint:
    """Cube point from a JSON file ``{"s": [...]}`` or an inline ``"s1,s2,..."`` list."""
    p = Path(spec)
    try:
        if p.is_file():
            data = json.loads(p.read_text())
            if not isinstance(data, dict) or not isinstance(data.get("s"), list):
                raise InputError(f"{spec}: expected an object with an 's' list")
            vals = [float(v) for v in data["s"]]
        else:
            vals = [float(v) for v in spec.split(",")]
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read cube point {spec!r}: {exc}") from exc
    try:
        return CubePoint(vals)
    except ChainError as exc:
        raise InputError(str(exc)) from exc


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_angles_csv(out: TextIO, angles: NDArray, closed: bool) -> None:
    """One configuration per row; header ``beta_1..`` or ``alpha_1..``."""
    prefix = "alpha" if closed else "beta"
    m = angles.shape[1]
    out.write(",".join(f"{prefix}_{i}" for i in range(1, m + 1)) + "\n")
    for row in angles:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def angles_csv_text(angles: NDArray, closed: bool) -> str:
    buf = io.StringIO()
    write_angles_csv(buf, angles, closed)
    return buf.getvalue()


def read_angles_csv(path: str | Path) -> tuple[bool, NDArray[np.float64]]:
    """Return ``(closed, angles)`` from an angle table.

    Raises:
        InputError: on a missing/empty file, a bad header or a non-numeric cell.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise InputError(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    kinds = set()
    for i, h in enumerate(header, start=1):
        m = _HEADER.match(h)
        if not m or int(m.group(2)) != i:
            raise InputError(f"{path}: bad header column {h!r}")
        kinds.add(m.group(1))
    if len(kinds) != 1:
        raise InputError(f"{path}: header mixes beta and alpha columns")
    body = rows[1:]
    if not body:
        raise InputError(f"{path} has no data rows")
    try:
        arr = np.array([[float(v) for v in r] for r in body])
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if arr.ndim != 2 or arr.shape[1] != len(header):
        raise InputError(f"{path}: ragged rows")
    return kinds == {"alpha"}, arr


def write_region_csv(out: TextIO, c4: NDArray, c3: NDArray, inq: NDArray) -> None:
    out.write("C_4,C_3,in_q\n")
    for x, y, q in zip(c4, c3, inq):
        out.write(f"{_fmt(x)},{_fmt(y)},{int(bool(q))}\n")
