# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""CLI formatting helpers."""

from __future__ import annotations

from typing import NoReturn

import typer

from heana.errors import EXIT_INTERNAL

_SI_PREFIXES = (
    (1e9, "G"),
    (1e6, "M"),
    (1e3, "k"),
    (1.0, ""),
    (1e-3, "m"),
    (1e-6, "u"),
    (1e-9, "n"),
    (1e-12, "p"),
)


def secho_error_and_exit(
    text: str, exit_code: int = EXIT_INTERNAL, color: str = typer.colors.RED
) -> NoReturn:
    """Print error to stderr and exit with ``exit_code``."""
    typer.secho(text, err=True, fg=color)
    raise typer.Exit(exit_code)


def si_format(value: float, unit: str, digits: int = 3) -> str:
    """Render ``value`` with an SI prefix, e.g. ``1.25 us``."""
    if value == 0:
        return f"0 {unit}"
    magnitude = abs(value)
    for scale, prefix in _SI_PREFIXES:
        if magnitude >= scale:
            return f"{value / scale:.{digits}g} {prefix}{unit}"
    scale, prefix = _SI_PREFIXES[-1]
    return f"{value / scale:.{digits}g} {prefix}{unit}"


def datarate_label(datarate: float) -> str:
    """Label a datarate in GS/s, e.g. ``10GS/s``."""
    return f"{datarate / 1e9:g}GS/s"
