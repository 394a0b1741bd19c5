"""File-system helpers for datasets and run artifacts."""

import json
import math
import os
from typing import Any, Dict, Iterable, List, TextIO

import pandas as pd

from .text import format_number

CSV_FLOAT_FORMAT = "%.12g"


def ensure_dirs(names: List[str]) -> None:
    """Create directories if they do not exist."""
    for n in names:
        if n:
            os.makedirs(n, exist_ok=True)


def _jsonable(v: Any) -> Any:
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return None
        return float(format_number(v))
    try:
        return _jsonable(v.item())  # numpy scalar
    except AttributeError:
        return v


def jsonl_lines(rows: Iterable[Dict[str, Any]]) -> List[str]:
    return [json.dumps({k: _jsonable(v) for k, v in r.items()}, ensure_ascii=False) for r in rows]


def write_jsonl(path: str, rows: List[Dict[str, Any]]):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in jsonl_lines(rows):
            f.write(line + "\n")


def write_table(df: pd.DataFrame, fmt: str = "csv", path: str = None, stream: TextIO = None) -> None:
    """CSV (``%.12g``, ``nan`` for missing) or JSON lines, to a file or a stream."""
    if fmt == "csv":
        text = df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, na_rep="nan", lineterminator="\n")
    elif fmt == "json":
        lines = jsonl_lines(df.to_dict(orient="records"))
        text = "".join(line + "\n" for line in lines)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path:
        ensure_dirs([os.path.dirname(path)])
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    elif stream is not None:
        stream.write(text)
