# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Frame generation for output-, input- and weight-stationary loop orders."""

from __future__ import annotations

import dataclasses
from typing import Iterator, Tuple

from heana.enums import Dataflow
from heana.logging import logger
from heana.modules.dataflow.accounting import count_buffer_accesses
from heana.modules.dataflow.capacitor import assign_capacitors
from heana.modules.dataflow.schema import (
    ComputationFrame,
    DpuConfig,
    Range,
    Schedule,
)
from heana.modules.tensor import GemmDims


def frame_count(
    dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow = Dataflow.OS
) -> int:
    """Number of computation frames.

    OS and IS iterate rows of I outermost, giving ``C * ceil(D/M) * ceil(K/N)``.
    WS iterates columns of W outermost, giving ``D * ceil(C/M) * ceil(K/N)``.
    """
    return (
        cfg.outer_iterations(dims, dataflow)
        * cfg.inner_blocks(dims, dataflow)
        * cfg.k_blocks(dims)
    )


def _block(index: int, size: int, limit: int) -> Range:
    return index * size, min(limit, (index + 1) * size)


def _loop_nest(
    dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow
) -> Iterator[Tuple[int, int, int]]:
    """Yield ``(outer, inner, k_block)`` in execution order."""
    n_outer = cfg.outer_iterations(dims, dataflow)
    n_inner = cfg.inner_blocks(dims, dataflow)
    n_k = cfg.k_blocks(dims)
    for outer in range(n_outer):
        if dataflow is Dataflow.OS:
            # output tile held across all of its k blocks
            for inner in range(n_inner):
                for kb in range(n_k):
                    yield outer, inner, kb
        else:
            # IS holds the input tile, WS the weight tile, across inner blocks
            for kb in range(n_k):
                for inner in range(n_inner):
                    yield outer, inner, kb


def iter_frames(
    dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow
) -> Iterator[ComputationFrame]:
    """Generate frames without capacitor assignment."""
    n_k = cfg.k_blocks(dims)
    previous = None
    for frame_id, (outer, inner, kb) in enumerate(_loop_nest(dims, cfg, dataflow), 1):
        if dataflow is Dataflow.WS:
            rows = _block(inner, cfg.M, dims.C)
            cols = (outer, outer + 1)
        else:
            rows = (outer, outer + 1)
            cols = _block(inner, cfg.M, dims.D)
        k_range = _block(kb, cfg.N, dims.K)
        frame = ComputationFrame(
            frame_id=frame_id,
            outer_iter=outer,
            tf_cycle=kb,
            ts_cycle=inner,
            rows=rows,
            k_range=k_range,
            cols=cols,
            is_final_for_output=kb == n_k - 1,
            input_changed=previous is None or previous.input_block != (rows, k_range),
            weight_changed=previous is None
            or previous.weight_block != (k_range, cols),
        )
        previous = frame
        yield frame


def plan_schedule(dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow) -> Schedule:
    """Full schedule with capacitor indices (BPCA) and event counters."""
    schedule = Schedule(dataflow, dims, cfg, list(iter_frames(dims, cfg, dataflow)))
    logger.debug(
        "Planned %s %s on %dx%d DPU: %d frames",
        dataflow.name,
        dims,
        cfg.N,
        cfg.M,
        len(schedule.frames),
    )
    if cfg.has_bpca:
        schedule = assign_capacitors(schedule)
    return dataclasses.replace(schedule, counters=count_buffer_accesses(schedule))
