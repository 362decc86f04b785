"""CSV reading and writing.

Sample files are headerless: the first row holds the grid points and
each following row holds one curve. Numbers are written with 17
significant digits so every file round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

import numpy as np

from .exceptions import DepthError, SampleFormatError
from .sample import FunctionalSample, make_grid


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_rows(path, rows, header=None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header is not None:
        writer.writerow(header)
    for row in rows:
        writer.writerow([c if isinstance(c, str) else fmt(c) for c in row])
    atomic_write_text(path, buf.getvalue())


def parse_sample(text: str, source: str = "<string>") -> FunctionalSample:
    """Parse the sample CSV format; errors name the offending line."""
    rows = []
    width = None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SampleFormatError(
                f"{source}: line {lineno} has {len(row)} fields, expected {width}")
        try:
            values = [float(c) for c in row]
        except ValueError:
            raise SampleFormatError(
                f"{source}: line {lineno} contains a non-numeric field") from None
        if not all(np.isfinite(values)):
            raise SampleFormatError(f"{source}: line {lineno} has non-finite values")
        rows.append(values)
    if len(rows) < 2:
        raise SampleFormatError(
            f"{source}: need a grid row and at least one curve row")
    try:
        grid = make_grid(rows[0])
        return FunctionalSample(np.array(rows[1:]), grid)
    except DepthError as exc:
        raise SampleFormatError(f"{source}: {exc}") from None


def read_sample(path) -> FunctionalSample:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SampleFormatError(f"cannot read {path}: {exc}") from None
    return parse_sample(text, str(path))


def write_sample(path, sample: FunctionalSample) -> None:
    write_rows(path, [sample.grid.points, *sample.values])


def read_table(path):
    """Read a headed CSV into ``(header, rows)`` with rows as strings."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader if row]
