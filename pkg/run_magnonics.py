"""CLI entry point for the cavity-magnon steady-state toolkit.

Usage:
    python run_magnonics.py thresholds
    python run_magnonics.py cut --config experiments/cut_ratio_1p3.cfg --out results/cut_ratio_1p3.csv

See ``python run_magnonics.py --help`` for the subcommands and
``docs/protocol.md`` for the datasets each one produces.
"""

from src.cli import main

if __name__ == "__main__":
    main()
