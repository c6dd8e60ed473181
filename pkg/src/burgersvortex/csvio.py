"""CSV emission and re-ingestion.

Numbers are written with repr(), the shortest decimal that round-trips the
binary double, so re-reading a snapshot reproduces it bit-exactly.  Files
are written atomically (temp file in the same directory, then rename).
"""

from __future__ import annotations

import os
import tempfile

import numpy as np


def write_csv(path, column_names, columns, header_comments=()):
    """Write columns (equal-length 1D arrays) with '#'-prefixed header lines."""
    columns = [np.asarray(c) for c in columns]
    lengths = {len(c) for c in columns}
    if len(lengths) != 1:
        raise ValueError("all columns must have the same length")
    lines = [f"# {c}" for c in header_comments]
    lines.append(",".join(column_names))
    for row in zip(*columns):
        lines.append(",".join(repr(float(v)) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def read_csv(path):
    """Read a CSV written by write_csv; returns (column_names, columns)."""
    names = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if names is None:
                names = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if names is None:
        raise ValueError(f"{path}: no header row found")
    cols = [np.array(col) for col in zip(*rows)] if rows else [np.array([]) for _ in names]
    return names, cols


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
