# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Dataflow scheduling, capacitor assignment and event accounting."""

from __future__ import annotations

from heana.modules.dataflow.accounting import (
    count_adc,
    count_buffer_accesses,
    frame_dac_conversions,
)
from heana.modules.dataflow.capacitor import (
    assign_capacitors,
    check_capacity,
    max_in_flight,
)
from heana.modules.dataflow.executor import (
    FunctionalResult,
    execute_functional,
    run_functional,
)
from heana.modules.dataflow.planner import frame_count, iter_frames, plan_schedule
from heana.modules.dataflow.profile import (
    ScheduleProfile,
    frame_features,
    profile_schedule,
    temporal_window,
)
from heana.modules.dataflow.schema import (
    DEFAULT_CAPACITORS,
    ComputationFrame,
    DpuConfig,
    EventCounts,
    Schedule,
    TileMap,
    tile_map,
)
from heana.modules.dataflow.trace import dump_trace, iter_trace, load_trace

__all__ = [
    "DEFAULT_CAPACITORS",
    "ComputationFrame",
    "DpuConfig",
    "EventCounts",
    "FunctionalResult",
    "Schedule",
    "ScheduleProfile",
    "TileMap",
    "assign_capacitors",
    "check_capacity",
    "count_adc",
    "count_buffer_accesses",
    "dump_trace",
    "execute_functional",
    "frame_count",
    "frame_dac_conversions",
    "frame_features",
    "iter_frames",
    "iter_trace",
    "load_trace",
    "max_in_flight",
    "plan_schedule",
    "profile_schedule",
    "run_functional",
    "temporal_window",
    "tile_map",
]
