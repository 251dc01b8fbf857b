# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Version utils."""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

HEANA_PACKAGE_NAME = "heana-sim"


def get_installed_version() -> str:
    """Get the installed package version (``0+unknown`` from a source tree)."""
    try:
        return version(HEANA_PACKAGE_NAME)
    except PackageNotFoundError:
        return "0+unknown"
