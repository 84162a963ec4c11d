"""CSV / JSON encoding of sweep records and Hartman reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict

from .sweep import HartmanReport, SweepRecord

__all__ = [
    "CSV_HEADER",
    "format_number",
    "records_to_csv",
    "records_from_csv",
    "record_to_dict",
    "records_to_json",
    "hartman_to_dict",
]

# column name -> SweepRecord attribute
_COLUMNS = (
    ("axis_value", "axis_value"),
    ("E", "energy"),
    ("V0", "v0"),
    ("V1", "v1"),
    ("a", "width"),
    ("k", "k"),
    ("xi", "xi"),
    ("mu", "mu"),
    ("T", "t_prob"),
    ("R", "r_prob"),
    ("absorption", "absorption"),
    ("phi_unwrapped", "phi_unwrapped"),
    ("tau_analytic", "tau_analytic"),
    ("tau_numeric", "tau_numeric"),
    ("tau_asy", "tau_asy"),
    ("v_limit", "v_limit"),
)
CSV_HEADER = tuple(name for name, _ in _COLUMNS) + ("flags",)
FLAG_SEP = "|"


def format_number(x: float) -> str:
    """17 significant digits; ``inf``/``nan`` spelled out."""
    return "%.17g" % x


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        row = [format_number(getattr(rec, attr)) for _, attr in _COLUMNS]
        row.append(FLAG_SEP.join(rec.flags))
        writer.writerow(row)
    return buf.getvalue()


def records_from_csv(text: str) -> list[SweepRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for row in reader:
        values = {attr: float(v) for (_, attr), v in zip(_COLUMNS, row)}
        flags = tuple(f for f in row[-1].split(FLAG_SEP) if f)
        out.append(SweepRecord(**values, flags=flags))
    return out


def _json_number(x):
    return x if math.isfinite(x) else None


def record_to_dict(rec: SweepRecord) -> dict:
    """JSON-ready mapping using the CSV column names.

    JSON has no infinity, so an unbounded limiting speed is written as
    ``null`` with ``v_limit_unbounded: true``; NaN becomes ``null``.
    """
    out = {name: _json_number(float(getattr(rec, attr))) for name, attr in _COLUMNS}
    out["v_limit_unbounded"] = math.isinf(rec.v_limit)
    out["flags"] = list(rec.flags)
    return out


def records_to_json(records) -> str:
    return json.dumps([record_to_dict(r) for r in records], indent=2) + "\n"


def hartman_to_dict(report: HartmanReport) -> dict:
    d = asdict(report)
    d["opacity_range"] = list(report.opacity_range) if report.opacity_range else None
    d["notes"] = list(report.notes)
    return d
