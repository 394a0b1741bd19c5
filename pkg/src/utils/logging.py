"""Logging configuration for runs."""

import logging
import os
from typing import Optional, TextIO

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
PACKAGE_LOGGER = "src"


class ConsoleHandler(logging.StreamHandler):
    """The single stderr handler owned by :func:`configure_root`."""


def get_logger(name: str, run_id: Optional[str] = None, level: int = logging.INFO) -> logging.Logger:
    """Return the ``src.run.<name>`` logger; given a run id it also writes to logs/<run_id>.log.

    Console output goes through the handler installed by :func:`configure_root`,
    so the command-line log level applies to run loggers too.
    """
    logger = logging.getLogger(f"{PACKAGE_LOGGER}.run.{name}")
    logger.setLevel(level)
    if run_id:
        path = os.path.abspath(os.path.join("logs", f"{run_id}.log"))
        files = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
        if not any(h.baseFilename == path for h in files):
            for h in files:
                logger.removeHandler(h)
                h.close()
            os.makedirs("logs", exist_ok=True)
            fh = logging.FileHandler(path, encoding="utf-8")
            fh.setFormatter(logging.Formatter(LOG_FORMAT))
            logger.addHandler(fh)
    return logger


def configure_root(level: str = "WARNING", stream: Optional[TextIO] = None) -> None:
    """Route every ``src.*`` logger through one console handler at ``level``.

    The handler filters by level itself: run loggers sit at INFO for their
    log files and propagate here.
    """
    root = logging.getLogger(PACKAGE_LOGGER)
    lvl = getattr(logging, level.upper(), logging.WARNING)
    root.setLevel(lvl)
    for h in [h for h in root.handlers if isinstance(h, ConsoleHandler)]:
        root.removeHandler(h)
    ch = ConsoleHandler(stream)
    ch.setLevel(lvl)
    ch.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(ch)
