# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Optical link budget and DPU scalability."""

from __future__ import annotations

from heana.modules.linkbudget.calibrate import (
    DEFAULT_ANCHORS,
    CalibrationResult,
    calibrate,
)
from heana.modules.linkbudget.equations import (
    POWER_CEILING_W,
    ScalePoint,
    dbm_to_watts,
    max_n,
    noise_beta,
    output_power,
    required_power,
    snr_bits,
    watts_to_dbm,
)
from heana.modules.linkbudget.sweep import scale_grid

__all__ = [
    "DEFAULT_ANCHORS",
    "POWER_CEILING_W",
    "CalibrationResult",
    "ScalePoint",
    "calibrate",
    "dbm_to_watts",
    "max_n",
    "noise_beta",
    "output_power",
    "required_power",
    "scale_grid",
    "snr_bits",
    "watts_to_dbm",
]
