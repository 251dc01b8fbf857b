# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Accelerator configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from heana.errors import InvalidConfigError
from heana.modules.dataflow import DpuConfig
from heana.schema.config import PeripheralModel

DPUS_PER_TILE = 4
TIR_CAP_HZ = 1e9


@dataclass(frozen=True, eq=False)
class AcceleratorConfig:
    """A mesh of tiles, each holding ``dpus_per_tile`` identical DPUs."""

    dpu: DpuConfig
    dpu_count: int
    peripherals: PeripheralModel = field(default_factory=PeripheralModel)
    dpus_per_tile: int = DPUS_PER_TILE
    tir_cap_hz: float = TIR_CAP_HZ
    laser_power_dbm: float = 10.0

    def __post_init__(self) -> None:
        """Validate counts."""
        if self.dpu_count < 1 or self.dpus_per_tile < 1:
            raise InvalidConfigError(
                f"need dpu_count >= 1 and dpus_per_tile >= 1, got "
                f"{self.dpu_count}, {self.dpus_per_tile}"
            )
        if self.tir_cap_hz <= 0:
            raise InvalidConfigError(f"TIR cap must be > 0, got {self.tir_cap_hz}")

    @property
    def tiles(self) -> int:
        """Tiles in the mesh."""
        return math.ceil(self.dpu_count / self.dpus_per_tile)
