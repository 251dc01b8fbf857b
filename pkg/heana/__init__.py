# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""HEANA-Sim: simulator and cost model for photonic GEMM accelerators."""

from __future__ import annotations

from heana.di.injector import set_default_modules
from heana.di.modules import default_modules

set_default_modules(default_modules)
