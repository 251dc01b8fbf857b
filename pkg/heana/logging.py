# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""HEANA-Sim logger."""

from __future__ import annotations

import logging
import os

LOG_LEVEL_ENV = "HEANA_LOG_LEVEL"


class ColorFormatter(logging.Formatter):
    """Level-colored formatter for terminal output."""

    grey = "\x1b[38;20m"
    yellow = "\x1b[33;20m"
    red = "\x1b[31;20m"
    bold_red = "\x1b[31;1m"
    reset = "\x1b[0m"

    default_fmt = "%(asctime)s.%(msecs)03d: %(name)s %(levelname)s: %(message)s"
    default_datefmt = "%Y-%m-%d %H:%M:%S"

    COLORS = {
        logging.DEBUG: grey,
        logging.INFO: grey,
        logging.WARNING: yellow,
        logging.ERROR: red,
        logging.CRITICAL: bold_red,
    }

    def __init__(self) -> None:
        """Initialize ColorFormatter."""
        super().__init__(fmt=self.default_fmt, datefmt=self.default_datefmt)
        self.formatters = {
            level: logging.Formatter(
                color + self.default_fmt + self.reset, datefmt=self.default_datefmt
            )
            for level, color in self.COLORS.items()
        }

    def format(self, record: logging.LogRecord) -> str:
        """Format with the record level's color."""
        formatter = self.formatters.get(record.levelno, self.formatters[logging.INFO])
        return formatter.format(record)


def get_logger(name: str) -> logging.Logger:
    """Get a colored stderr logger whose level follows ``HEANA_LOG_LEVEL``."""
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(ColorFormatter())
        logger.addHandler(handler)
    logger.setLevel(os.environ.get(LOG_LEVEL_ENV, "INFO").upper())
    return logger


logger = get_logger("HEANA")
