# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Decorator utils."""

from __future__ import annotations

import functools
from typing import Any, Callable

import typer

from heana.errors import EXIT_INTERNAL, HeanaError
from heana.logging import logger
from heana.utils.format import secho_error_and_exit


def check_sim_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Map simulator exceptions of a CLI command onto exit codes."""

    @functools.wraps(func)
    def inner(*args, **kwargs) -> Any:
        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except HeanaError as exc:
            secho_error_and_exit(str(exc), exc.exit_code)
        except Exception as exc:  # pylint: disable=broad-except
            logger.debug("Unhandled exception", exc_info=True)
            secho_error_and_exit(
                f"Internal error: {type(exc).__name__}: {exc}", EXIT_INTERNAL
            )

    return inner
