# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Physical parameter schemas: link budget, peripherals and area model."""

from __future__ import annotations

from typing import Dict, Optional

from pydantic import BaseModel, Field

from heana.enums import ArchFamily, Architecture
from heana.errors import InvalidConfigError


def _default_penalties() -> Dict[ArchFamily, float]:
    return {ArchFamily.HEANA: 1.8, ArchFamily.MAW: 4.8, ArchFamily.AMW: 5.8}


class LinkBudgetParams(BaseModel):
    """Optical link-budget constants, keyed by their published symbols.

    Powers in dBm, losses in dB, ``P_Si_att`` in dB/mm, ``d_MRR`` in mm.
    ``d_MRR`` and ``P_SMF_att`` are calibration constants.
    """

    P_Laser: float = 10.0
    R: float = Field(default=1.2, gt=0)
    R_L: float = Field(default=50.0, gt=0)
    I_d: float = Field(default=35e-9, ge=0)
    T: float = Field(default=300.0, gt=0)
    RIN: float = -140.0
    P_EC_IL: float = Field(default=1.44, ge=0)
    P_Si_att: float = Field(default=0.3, ge=0)
    P_splitter_IL: float = Field(default=0.01, ge=0)
    P_MRM_IL: float = Field(default=4.0, ge=0)
    P_MRR_IL: float = Field(default=0.01, ge=0)
    P_MRM_OBL: float = Field(default=0.01, ge=0)
    P_MRR_W_OBL: float = Field(default=0.02, ge=0)
    P_SMF_att: float = Field(default=0.0, ge=0)
    d_MRR: float = Field(default=0.0, ge=0)
    P_penalty: Dict[ArchFamily, float] = Field(default_factory=_default_penalties)

    def penalty_for(self, arch: Architecture) -> float:
        """Network penalty of ``arch``'s family."""
        try:
            return self.P_penalty[arch.family]
        except KeyError as exc:
            raise InvalidConfigError(
                f"P_penalty has no entry for '{arch.family}'"
            ) from exc


class ComponentSpec(BaseModel):
    """Power, latency and area of one peripheral component."""

    power_mw: float = Field(gt=0)
    latency_s: Optional[float] = Field(default=None, gt=0)
    latency_cycles: Optional[int] = Field(default=None, gt=0)
    area_mm2: Optional[float] = Field(default=None, gt=0)

    def latency(self, clock_hz: float) -> float:
        """Latency in seconds; cycle counts use ``clock_hz``."""
        if self.latency_s is not None:
            return self.latency_s
        if self.latency_cycles is not None:
            return self.latency_cycles / clock_hz
        return 0.0

    @property
    def power_w(self) -> float:
        """Power in watts."""
        return self.power_mw * 1e-3

    def event_energy(self, clock_hz: float = 1e9) -> float:
        """Energy of one event (power x latency), joules."""
        return self.power_w * self.latency(clock_hz)


def _component(power_mw: float, latency_s: float, area_mm2: Optional[float] = None):
    return lambda: ComponentSpec(
        power_mw=power_mw, latency_s=latency_s, area_mm2=area_mm2
    )


def _clocked(power_mw: float, cycles: int, area_mm2: float):
    return lambda: ComponentSpec(
        power_mw=power_mw, latency_cycles=cycles, area_mm2=area_mm2
    )


def _default_element_areas() -> Dict[ArchFamily, float]:
    return {ArchFamily.HEANA: 0.0065, ArchFamily.AMW: 0.0083, ArchFamily.MAW: 0.0042}


class AreaModel(BaseModel):
    """Per-DPU area model and the area-matching reference design.

    ``element_area_mm2`` is the optical area per (wavelength, DPE) position:
    TAOM plus filters for HEANA, input modulator share plus weight ring for
    AMW/MAW.
    """

    element_area_mm2: Dict[ArchFamily, float] = Field(
        default_factory=_default_element_areas
    )
    reference_arch: Architecture = Architecture.HEANA
    reference_dpu_count: int = Field(default=50, ge=1)
    reference_bits: int = Field(default=4, ge=1)
    reference_datarate: float = Field(default=1e9, gt=0)


class PeripheralModel(BaseModel):
    """Peripheral and converter costs of the accelerator."""

    reduction_network: ComponentSpec = Field(
        default_factory=_component(0.050, 3.125e-9, 3.00e-5)
    )
    activation_unit: ComponentSpec = Field(
        default_factory=_component(0.52, 0.78e-9, 6.00e-5)
    )
    io_interface: ComponentSpec = Field(
        default_factory=_component(140.18, 0.78e-9, 2.44e-2)
    )
    pooling_unit: ComponentSpec = Field(
        default_factory=_component(0.4, 3.125e-9, 2.40e-4)
    )
    edram: ComponentSpec = Field(default_factory=_component(41.1, 1.56e-9, 1.66e-1))
    bus: ComponentSpec = Field(default_factory=_clocked(7.0, 5, 9.00e-3))
    router: ComponentSpec = Field(default_factory=_clocked(42.0, 2, 1.50e-2))
    dac_baseline: ComponentSpec = Field(
        default_factory=_component(12.5, 0.78e-9, 2.50e-3)
    )
    dac_heana: ComponentSpec = Field(default_factory=_component(26.0, 0.78e-9, 6.00e-3))
    bpca: ComponentSpec = Field(default_factory=_component(1.15, 0.78e-9, 5.2e-3))
    eo_tuning: ComponentSpec = Field(default_factory=_component(0.08, 20e-9))
    to_tuning: ComponentSpec = Field(default_factory=_component(275.0, 4e-6))
    capacitor_switch: ComponentSpec = Field(default_factory=_component(0.041, 2.5e-9))
    # no published ADC entry: DAC-HEANA figures stand in
    adc: ComponentSpec = Field(default_factory=_component(26.0, 0.78e-9, 6.00e-3))
    noc_clock_hz: float = Field(default=1e9, gt=0)
    area: AreaModel = Field(default_factory=AreaModel)
