# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""DPU area and area-proportionate DPU counts."""

from __future__ import annotations

import math
from typing import List, Sequence

from heana.enums import ArchFamily, Architecture
from heana.errors import InvalidConfigError
from heana.modules.dataflow import DpuConfig
from heana.modules.perfmodel.config import AcceleratorConfig
from heana.schema.config import ComponentSpec, PeripheralModel

# floor() slack so equal areas give exactly the reference count
_FLOOR_EPS = 1e-9


def _area(component: ComponentSpec, name: str) -> float:
    if component.area_mm2 is None:
        raise InvalidConfigError(f"peripheral '{name}' has no area_mm2")
    return component.area_mm2


def dpe_area(family: ArchFamily, peripherals: PeripheralModel) -> float:
    """Electronic area behind one DPE (mm^2)."""
    adc = _area(peripherals.adc, "adc")
    if family is ArchFamily.HEANA:
        return adc + _area(peripherals.bpca, "bpca")
    return adc + _area(peripherals.reduction_network, "reduction_network")


def dpu_area(arch: Architecture, n: int, m: int, peripherals: PeripheralModel) -> float:
    """Area of one ``n x m`` DPU (mm^2).

    ``*_BPCA`` variants are costed as their family so that they keep the
    family's DPU count.
    """
    family = arch.family
    try:
        element = peripherals.area.element_area_mm2[family]
    except KeyError as exc:
        raise InvalidConfigError(f"no element area for '{family}'") from exc
    return n * m * element + m * dpe_area(family, peripherals)


def scaled_dpu_count(
    reference_area_mm2: float, dpu: DpuConfig, peripherals: PeripheralModel
) -> int:
    """DPUs of ``dpu`` fitting the reference DPU area (at least one)."""
    per_dpu = dpu_area(dpu.arch, dpu.N, dpu.M, peripherals)
    return max(1, math.floor(reference_area_mm2 / per_dpu + _FLOOR_EPS))


def area_scale(reference: AcceleratorConfig, others: Sequence[DpuConfig]) -> List[int]:
    """DPU counts matching ``reference``'s total DPU area, one per entry."""
    ref = reference.dpu
    total = reference.dpu_count * dpu_area(
        ref.arch, ref.N, ref.M, reference.peripherals
    )
    return [scaled_dpu_count(total, dpu, reference.peripherals) for dpu in others]
