# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""HEANA-Sim command line."""

from __future__ import annotations

from heana.cli.main import app

__all__ = ["app"]
