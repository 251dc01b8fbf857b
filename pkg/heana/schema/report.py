# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Simulation report schemas."""

from __future__ import annotations

from typing import Dict, List

from pydantic import BaseModel, Field

from heana.enums import Architecture, Dataflow, LayerKind


class LayerReport(BaseModel):
    """Per-image cost of one layer."""

    name: str
    kind: LayerKind
    latency_s: float
    frames: int
    adc_conversions: int


class SimReport(BaseModel):
    """Result of one (architecture, dataflow, datarate, workload) run."""

    run_id: str
    model: str
    arch: Architecture
    dataflow: Dataflow
    datarate: float
    bits: int
    N: int
    M: int
    dpu_count: int
    batch: int
    latency_s: float
    energy_j: float
    fps: float
    fps_per_watt: float
    energy_breakdown: Dict[str, float] = Field(default_factory=dict)
    counts: Dict[str, int] = Field(default_factory=dict)
    violations: List[str] = Field(default_factory=list)
    layers: List[LayerReport] = Field(default_factory=list)

    @property
    def config_id(self) -> str:
        """Run id without the model, e.g. ``HEANA-OS@1GS/s``."""
        return self.run_id.split("/", 1)[-1]


class ComparisonRow(BaseModel):
    """Metrics of one report relative to the baseline."""

    run_id: str
    model: str
    config: str
    fps: float
    fps_per_watt: float
    latency_s: float
    energy_j: float


class ComparisonTable(BaseModel):
    """Normalized reports plus per-configuration geometric means."""

    baseline: str
    rows: List[ComparisonRow] = Field(default_factory=list)
    gmean: List[ComparisonRow] = Field(default_factory=list)
