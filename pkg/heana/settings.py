# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Runtime settings."""

from __future__ import annotations

import os

from heana.errors import InvalidConfigError

THREADS_ENV = "HEANA_SIM_THREADS"


class Settings:
    """Simulator runtime settings."""

    threads: int = 0
    show_progress: bool = False


class EnvSettings(Settings):
    """Settings read from the process environment."""

    def __init__(self) -> None:
        """Read ``HEANA_SIM_THREADS``."""
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError as exc:
            raise InvalidConfigError(
                f"{THREADS_ENV}={raw!r} is not an integer"
            ) from exc
        if threads < 0:
            raise InvalidConfigError(f"{THREADS_ENV} must be >= 0, got {threads}")
        self.threads = threads
        self.show_progress = os.isatty(2)


class SequentialSettings(Settings):
    """Single-context settings for tests."""

    threads = 0
