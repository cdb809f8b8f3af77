"""CSV emission with a fixed numeric contract.

Floats are serialized with 12 significant digits so that MHz-scale structure
on GHz-scale baselines survives round-tripping; non-finite values are
rejected rather than silently written.  Output is RFC-4180-style with a
header row and a newline-terminated final row, and is byte-deterministic for
identical inputs.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("boolean values have no column contract")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("non-finite value")
        if value == 0.0:  # normalize -0.0
            value = 0.0
        return f"{value:.12g}"
    if isinstance(value, str):
        return value
    raise TypeError(f"unsupported cell type {type(value).__name__}")


def emit_table(rows, schema) -> bytes:
    """Serialize rows (sequences matching ``schema``) to CSV bytes.

    Raises ValueError naming the row index on schema-length mismatch or
    non-finite numeric values.
    """
    schema = list(schema)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(schema)
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != len(schema):
            raise ValueError(
                f"row {i} has {len(row)} cells, schema has {len(schema)} columns"
            )
        try:
            writer.writerow([format_value(v) for v in row])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"row {i}: {exc}") from exc
    return buf.getvalue().encode("utf-8")


def parse_table(data: bytes) -> tuple[list[str], list[list[str]]]:
    """Inverse of :func:`emit_table` at the string level: (header, rows)."""
    reader = csv.reader(io.StringIO(data.decode("utf-8")))
    rows = list(reader)
    if not rows:
        raise ValueError("empty table: header row missing")
    return rows[0], rows[1:]
