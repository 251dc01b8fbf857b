# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Latency, energy and area of a DPU mesh running a workload."""

from __future__ import annotations

from heana.modules.perfmodel.area import (
    area_scale,
    dpe_area,
    dpu_area,
    scaled_dpu_count,
)
from heana.modules.perfmodel.compare import compare
from heana.modules.perfmodel.config import (
    DPUS_PER_TILE,
    TIR_CAP_HZ,
    AcceleratorConfig,
)
from heana.modules.perfmodel.evaluate import (
    ENERGY_COMPONENTS,
    LayerCost,
    LayerPlan,
    evaluate,
    evaluate_layer,
)
from heana.modules.perfmodel.latency import (
    FrameContext,
    FrameTiming,
    ProfileTiming,
    dpe_rate,
    frame_latency,
    profile_timing,
    rate_violation,
)

__all__ = [
    "DPUS_PER_TILE",
    "ENERGY_COMPONENTS",
    "TIR_CAP_HZ",
    "AcceleratorConfig",
    "FrameContext",
    "FrameTiming",
    "LayerCost",
    "LayerPlan",
    "ProfileTiming",
    "area_scale",
    "compare",
    "dpe_area",
    "dpu_area",
    "evaluate",
    "evaluate_layer",
    "frame_latency",
    "profile_timing",
    "rate_violation",
    "scaled_dpu_count",
]
