# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""BPCA capacitor assignment."""

from __future__ import annotations

import dataclasses
import heapq
from typing import Dict, List, Tuple

from heana.enums import Dataflow
from heana.errors import CapacityExceededError, InvalidConfigError
from heana.modules.dataflow.schema import ComputationFrame, DpuConfig, Schedule
from heana.modules.tensor import GemmDims


def max_in_flight(dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow) -> int:
    """Most output tiles holding a capacitor at once.

    OS finishes each tile before the next; IS and WS keep every tile of an
    outer iteration open until its last k block, unless a tile completes in a
    single frame.
    """
    if dataflow is Dataflow.OS or cfg.k_blocks(dims) == 1:
        return 1
    return cfg.inner_blocks(dims, dataflow)


def check_capacity(dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow) -> None:
    """Raise ``CapacityExceededError`` if the bank is too small."""
    required = max_in_flight(dims, cfg, dataflow)
    if cfg.has_bpca and required > cfg.p:
        raise CapacityExceededError(required, cfg.p)


def assign_capacitors(schedule: Schedule) -> Schedule:
    """Give every frame the capacitor of its output tile.

    A new output tile takes the lowest-indexed free capacitor; the capacitor is
    freed when the tile is read out at its final frame. Under OS this reuses
    C1 for every tile.

    Raises:
        InvalidConfigError: If the architecture has no BPCA.
        CapacityExceededError: If more tiles are in flight than capacitors.

    """
    cfg = schedule.config
    if not cfg.has_bpca:
        raise InvalidConfigError(f"{cfg.arch.label} has no BPCA capacitors")
    check_capacity(schedule.dims, cfg, schedule.dataflow)

    free = list(range(1, cfg.p + 1))
    live: Dict[Tuple[Tuple[int, int], Tuple[int, int]], int] = {}
    frames: List[ComputationFrame] = []
    for frame in schedule.frames:
        tile = frame.output_block
        if tile not in live:
            if not free:
                raise CapacityExceededError(len(live) + 1, cfg.p)
            live[tile] = heapq.heappop(free)
        index = live[tile]
        if frame.is_final_for_output:
            heapq.heappush(free, live.pop(tile))
        frames.append(dataclasses.replace(frame, capacitor=index))
    return dataclasses.replace(schedule, frames=frames)
