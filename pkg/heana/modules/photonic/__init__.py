# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Value-level models of the TAOM multiplier and the BPCA receiver."""

from __future__ import annotations

from heana.modules.photonic.bpca import (
    CapacitorBank,
    NoiseModel,
    adc_readout,
    select_capacitor,
    tir_accumulate,
)
from heana.modules.photonic.device import (
    PWAMSymbol,
    TAOMConfig,
    bpd_superpose,
    modulate_tile,
    multiplier_mode_step,
    superpose_energies,
    taom_modulate,
)

__all__ = [
    "CapacitorBank",
    "NoiseModel",
    "PWAMSymbol",
    "TAOMConfig",
    "adc_readout",
    "bpd_superpose",
    "modulate_tile",
    "multiplier_mode_step",
    "select_capacitor",
    "superpose_energies",
    "taom_modulate",
    "tir_accumulate",
]
