"""Output writers for datasets and run reports.

A dataset is one long-format table (CSV or JSON lines). The oracle run adds
three artifacts next to it:
  - summary CSV   (agreement rates by Kerr sign)
  - report MD     (human-readable Markdown tables)
  - metrics JSON  (flat metrics for cross-run comparison)
"""

import json
import os
from typing import Dict, Sequence

import pandas as pd
from tabulate import tabulate

from ..utils.io import CSV_FLOAT_FORMAT, ensure_dirs, write_table


def render_table(df: pd.DataFrame, floatfmt: str = ".6g") -> str:
    return tabulate(df, headers="keys", tablefmt="github", showindex=False, floatfmt=floatfmt)


def flatten_summary(summary_df: pd.DataFrame, key_cols: Sequence[str] = ("kerr_sign",)) -> Dict[str, object]:
    """Flatten summary metrics into one dict.

    Example column naming:
      rho_agree_rate -> rho_agree_rate__+
    """
    if summary_df is None or summary_df.empty:
        return {}

    keys = [c for c in key_cols if c in summary_df.columns]
    metric_cols = [c for c in summary_df.columns if c not in keys]

    out: Dict[str, object] = {}
    for _, r in summary_df.iterrows():
        key = "__".join(str(r[c]) for c in keys) if keys else "all"
        for m in metric_cols:
            v = r[m]
            # numpy/pandas scalars -> native Python for JSON
            try:
                v = v.item()  # type: ignore[attr-defined]
            except AttributeError:
                pass
            if isinstance(v, float) and v != v:
                v = None
            out[f"{m}__{key}"] = v
    return out


def save_dataset(df: pd.DataFrame, path: str, fmt: str = "csv") -> None:
    write_table(df, fmt=fmt, path=path)


def _stem(path: str) -> str:
    root, _ext = os.path.splitext(path)
    return root


def save_validation_report(summary_df: pd.DataFrame, per_point_df: pd.DataFrame, out_path: str) -> Dict[str, str]:
    """Write <stem>_summary.csv, <stem>_report.md and <stem>_metrics.json beside the dataset."""
    stem = _stem(out_path)
    paths = {
        "summary": f"{stem}_summary.csv",
        "report": f"{stem}_report.md",
        "metrics": f"{stem}_metrics.json",
    }
    ensure_dirs([os.path.dirname(stem)])
    summary_df.to_csv(paths["summary"], index=False, float_format=CSV_FLOAT_FORMAT, na_rep="nan", lineterminator="\n")

    metrics = {
        "n_points": int(len(per_point_df)),
        "n_sentinel": int((per_point_df["status"] != "ok").sum()) if "status" in per_point_df.columns else None,
        "summary_flat": flatten_summary(summary_df),
    }
    with open(paths["metrics"], "w", encoding="utf-8") as f:
        json.dump(metrics, f, ensure_ascii=False, indent=2)

    worst = per_point_df.sort_values("rho_error", ascending=False, na_position="last").head(10)
    with open(paths["report"], "w", encoding="utf-8") as f:
        f.write("# Oracle Validation Report\n\n")
        f.write("## Summary (by Kerr sign)\n\n")
        f.write(render_table(summary_df))
        f.write("\n\n## Largest order-parameter discrepancies\n\n")
        f.write(render_table(worst))
        f.write("\n")
    return paths
