"""Deterministic CSV and JSON emission for scenario reports.

Floats are written with fixed significant digits (17 in JSON, 12 in CSV)
so identical runs produce byte-identical files; 17 significant digits
round-trip IEEE doubles exactly, so emitted JSON re-parses into an equal
record.  Files are written to a temporary sibling and renamed into place,
so a failed run never leaves a partial file.
"""

from __future__ import annotations

import json
import os
from pathlib import Path


def _format_float(v: float, digits: int) -> str:
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError("reports must not contain NaN or infinities")
    text = format(v, f".{digits}g")
    # normalize negative zero for stable output
    return "0" if text in ("-0", "-0.0") else text


def _json_value(v, digits: int = 17) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _format_float(v, digits)
    if isinstance(v, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_json_value(x, digits)}" for k, x in v.items())
        return "{" + inner + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x, digits) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__} deterministically")


def render_json(config: dict, columns, rows, diagnostics: dict) -> str:
    doc = {
        "config": config,
        "columns": list(columns),
        "rows": [list(r) for r in rows],
        "diagnostics": diagnostics,
    }
    return _json_value(doc) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        raise TypeError("boolean cells are not part of any report schema")
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _format_float(v, 12)
    raise TypeError(f"cannot serialize {type(v).__name__} into CSV")


def render_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write UTF-8 text via a temporary file and an atomic rename."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()
