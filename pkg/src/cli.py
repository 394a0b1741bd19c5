"""Command-line front end: config ingestion, subcommand dispatch and serialization.

Usage:
    python run_magnonics.py <subcommand> [--config FILE] [--key value ...] [--out FILE]

Subcommands: branches, thresholds, phase-diagram, cut, fluctuations, contrast,
oracle, hysteresis. Datasets go to ``--out`` (or stdout) as CSV or JSON lines;
``branches``, ``thresholds`` and the ``oracle`` summary print GitHub tables
when no ``--out`` is given.

Exit codes: 0 success, 1 invalid configuration, 2 numerical error. Errors are
reported on stderr as ``error: <Class>: <message>``.
"""

from __future__ import annotations

import argparse
import os
import platform
import re
import subprocess
import sys
import time
from typing import Callable, Dict, List, Optional, TextIO

import pandas as pd
import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from .config import CONFIG_KEYS, RunConfig, build_config, dump_config, load_config_file
from .errors import ConfigError, MagnonicsError
from .eval.reporters import render_table, save_dataset, save_validation_report
from .model import KerrSign, scaled_occupation
from .oracle import hysteresis_loop, summarize_validation, validation_grid
from .stability import diagnose_all_branches
from .steadystate import admissibility, critical_xi, omega_1, omega_2, onset_drive
from .sweep import contrast_map, fluctuation_cut, order_parameter_cut, phase_diagram
from .utils.io import write_table
from .utils.logging import configure_root, get_logger
from .utils.text import format_complex, format_number

SUBCOMMANDS = ["branches", "thresholds", "phase-diagram", "cut", "fluctuations", "contrast", "oracle", "hysteresis"]
ALIASES = {"ratio": "delta_m_over_delta_a", "kerr": "kerr_sign"}


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so bad flags map to exit code 1."""

    def error(self, message: str):
        raise ConfigError(message)


def _run_id(command: str, out: str) -> str:
    """``<unix time>_<subcommand>_<output stem>``, safe as a log file name."""
    stem = os.path.splitext(os.path.basename(out))[0]
    return f"{int(time.time())}_{command}_{re.sub(r'[^A-Za-z0-9.-]+', '-', stem)}"


def _git_metadata() -> dict:
    """Commit and dirty flag of the checkout holding this package; None values outside git."""
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    def _git(*cmd: str) -> str:
        return subprocess.check_output(["git", *cmd], cwd=root, stderr=subprocess.DEVNULL, text=True).strip()

    try:
        commit = _git("rev-parse", "HEAD")
        dirty = bool(_git("status", "--porcelain", "--untracked-files=no"))
    except (OSError, subprocess.CalledProcessError):
        return {"commit": None, "dirty": None}
    return {"commit": commit, "dirty": dirty}


def _write_manifest(run_id: str, command: str, cfg_path: Optional[str], cfg: RunConfig, outputs: List[str]) -> str:
    manifest = {
        "run_id": run_id,
        "timestamp": int(time.time()),
        "command": command,
        "config_path": os.path.abspath(cfg_path) if cfg_path else None,
        "config": cfg.model_dump(mode="json"),
        "outputs": [os.path.abspath(p) for p in outputs],
        "env": {
            "python": sys.version,
            "executable": sys.executable,
            "platform": platform.platform(),
            "git": _git_metadata(),
        },
    }
    out_path = f"{outputs[0]}.manifest.yaml"
    with open(out_path, "w", encoding="utf-8") as f:
        yaml.safe_dump(manifest, f, sort_keys=False, allow_unicode=True)
    return out_path


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    io = common.add_argument_group("run")
    io.add_argument("--config", help="flat key=value config file")
    io.add_argument("--dump-config", metavar="PATH", help="write the effective config ('-' prints it and exits)")
    io.add_argument("--out", help="output file (default: stdout)")
    io.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    io.add_argument("--progress", action="store_true", help="tqdm progress bar on stderr")

    keys = common.add_argument_group("config keys (override the config file)")
    for key in CONFIG_KEYS:
        flags = [f"--{key}"]
        if "_" in key:
            flags.append(f"--{key.replace('_', '-')}")
        flags += [f"--{alias}" for alias, target in ALIASES.items() if target == key]
        keys.add_argument(*flags, dest=key, default=None, metavar="VALUE")

    parser = CliParser(
        prog="run_magnonics.py",
        description="Steady states, phases, fluctuations and nonreciprocity of a parametrically driven Kerr cavity-magnon system.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CliParser)
    sub.required = True
    helps = {
        "branches": "the three magnon-number branches with admissibility and stability",
        "thresholds": "critical ratio ξ and critical drives Ω₁, Ω₂",
        "phase-diagram": "phase label over the Ω × Δm/Δa grid for one Kerr sign",
        "cut": "order parameter of both Kerr signs along Ω at fixed Δm/Δa",
        "fluctuations": "magnon-number fluctuations of both Kerr signs along Ω",
        "contrast": "bidirectional contrast ratio over the Ω × Δm/Δa grid",
        "oracle": "time-domain validation of the analytic pipeline",
        "hysteresis": "up- and down-sweep of Ω following the attractor",
    }
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, object]:
    return {key: getattr(args, key) for key in CONFIG_KEYS if getattr(args, key, None) is not None}


# subcommands ---------------------------------------------------------------


def cmd_branches(cfg: RunConfig) -> pd.DataFrame:
    params = cfg.system_params()
    verdicts = diagnose_all_branches(params, cfg.tolerances())
    rows = []
    for label, v in verdicts.items():
        b = v.branch
        rows.append(
            {
                "branch": label.value,
                "admissible": b.admissible,
                "magnon_occ": b.magnon_occ,
                "rho": scaled_occupation(params, b.magnon_occ) if b.admissible else float("nan"),
                "photon_occ": b.photon_occ,
                "m_amplitude": format_complex(b.m_amplitude) if b.admissible else "",
                "a_amplitude": format_complex(b.a_amplitude) if b.admissible else "",
                "stability": v.state.value if v.state is not None else "not evaluated",
                "max_real": v.max_real,
            }
        )
    return pd.DataFrame(rows)


def cmd_thresholds(cfg: RunConfig) -> pd.DataFrame:
    params = cfg.system_params()
    ratio = f"ratio={format_number(params.detuning_ratio)}"
    rows = [
        {"quantity": "xi", "value": critical_xi(params), "detail": ""},
        {"quantity": "omega_1", "value": omega_1(params), "detail": ""},
        {"quantity": "omega_2", "value": omega_2(params), "detail": ratio},
    ]
    for sign in (KerrSign.POSITIVE, KerrSign.NEGATIVE):
        rows.append({"quantity": f"onset_drive_K{sign.value}", "value": onset_drive(params.with_sign(sign)), "detail": ratio})
    omega = f"omega={format_number(params.omega_drive)}, K{params.kerr_sign.value}"
    for label, verdict in admissibility(params).items():
        rows.append({"quantity": f"branch_{label.value}", "value": float("nan"), "detail": f"{verdict.value} ({omega})"})
    return pd.DataFrame(rows, columns=["quantity", "value", "detail"])


def cmd_phase_diagram(cfg: RunConfig, jobs: int, progress: bool, run_id: Optional[str]) -> pd.DataFrame:
    return phase_diagram(cfg.grid_spec(), cfg.kerr_sign, jobs=jobs, progress=progress, run_id=run_id)


def cmd_cut(cfg: RunConfig, jobs: int, progress: bool, run_id: Optional[str]) -> pd.DataFrame:
    return order_parameter_cut(cfg.cut_spec(), jobs=jobs, progress=progress, run_id=run_id)


def cmd_fluctuations(cfg: RunConfig, jobs: int, progress: bool, run_id: Optional[str]) -> pd.DataFrame:
    return fluctuation_cut(cfg.cut_spec(), jobs=jobs, progress=progress, run_id=run_id)


def cmd_contrast(cfg: RunConfig, jobs: int, progress: bool, run_id: Optional[str]) -> pd.DataFrame:
    return contrast_map(cfg.grid_spec(), jobs=jobs, progress=progress, run_id=run_id)


def cmd_oracle(cfg: RunConfig, run_id: Optional[str]) -> pd.DataFrame:
    n = cfg.oracle_count
    return validation_grid(
        cfg.system_params(),
        cfg.omega_axis(n).values(),
        cfg.ratio_axis(n).values(),
        settings=cfg.oracle_settings(),
        tol=cfg.tolerances(),
        run_id=run_id,
    )


def cmd_hysteresis(cfg: RunConfig, progress: bool) -> pd.DataFrame:
    omegas = cfg.omega_axis(cfg.hysteresis_count).values()
    return hysteresis_loop(cfg.system_params(), omegas, cfg.oracle_settings(), cfg.tolerances(), progress=progress)


GRID_COMMANDS: Dict[str, Callable[..., pd.DataFrame]] = {
    "phase-diagram": cmd_phase_diagram,
    "cut": cmd_cut,
    "fluctuations": cmd_fluctuations,
    "contrast": cmd_contrast,
}


def _emit(df: pd.DataFrame, cfg: RunConfig, out: Optional[str], stdout: TextIO, human: bool) -> None:
    if out:
        save_dataset(df, out, cfg.format)
    elif human:
        stdout.write(render_table(df, floatfmt=".12g") + "\n")
    else:
        write_table(df, fmt=cfg.format, stream=stdout)


def _dispatch(args: argparse.Namespace, cfg: RunConfig, stdout: TextIO) -> None:
    command = args.command
    run_id = _run_id(command, args.out) if args.out else None
    if run_id:
        get_logger("cli", run_id).info("%s -> %s", command, args.out)

    if command in GRID_COMMANDS:
        df = GRID_COMMANDS[command](cfg, cfg.resolved_jobs(), args.progress, run_id)
        _emit(df, cfg, args.out, stdout, human=False)
    elif command == "branches":
        _emit(cmd_branches(cfg), cfg, args.out, stdout, human=True)
    elif command == "thresholds":
        _emit(cmd_thresholds(cfg), cfg, args.out, stdout, human=True)
    elif command == "hysteresis":
        _emit(cmd_hysteresis(cfg, args.progress), cfg, args.out, stdout, human=False)
    elif command == "oracle":
        per_point = cmd_oracle(cfg, run_id)
        summary = summarize_validation(per_point)
        if args.out:
            save_dataset(per_point, args.out, cfg.format)
            save_validation_report(summary, per_point, args.out)
        stdout.write(render_table(summary) + "\n")

    if args.out:
        _write_manifest(run_id, command, args.config, cfg, [args.out])


def run(argv: Optional[List[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """Parse ``argv``, run one subcommand and return the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    # .env may set MAGNONIC_JOBS; the existing environment wins.
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
        configure_root(args.log_level, stream=stderr)
        file_values = load_config_file(args.config) if args.config else {}
        cfg = build_config(file_values, _overrides(args))
        if args.dump_config:
            text = dump_config(cfg)
            if args.dump_config == "-":
                stdout.write(text)
                return 0
            with open(args.dump_config, "w", encoding="utf-8") as f:
                f.write(text)
        _dispatch(args, cfg, stdout)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (ConfigError, ValidationError, ValueError, OSError) as e:
        stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 1
    except MagnonicsError as e:
        stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())
