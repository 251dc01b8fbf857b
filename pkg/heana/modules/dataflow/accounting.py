# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""ADC, DAC and buffer event counting."""

from __future__ import annotations

from typing import Optional

from heana.enums import ArchFamily, Architecture, Dataflow
from heana.modules.dataflow.schema import (
    ComputationFrame,
    DpuConfig,
    EventCounts,
    Schedule,
)
from heana.modules.tensor import GemmDims


def count_adc(dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow) -> int:
    """ADC conversions of a GEMM.

    BPCA architectures convert each output once; the others convert every
    partial sum. The dataflow does not change the count.
    """
    del dataflow
    outputs = dims.C * dims.D
    if cfg.has_bpca:
        return outputs
    return outputs * cfg.k_blocks(dims)


def frame_dac_conversions(frame: ComputationFrame, arch: Architecture) -> int:
    """DAC conversions issued by one frame."""
    family = arch.family
    if family is ArchFamily.HEANA:
        # every TAOM re-encodes its product each frame
        return frame.k_len * frame.lanes
    weights = frame.weight_elements if frame.weight_changed else 0
    if not frame.input_changed:
        return weights
    if family is ArchFamily.AMW:
        # AMW aggregates per DPE, so each DPE modulates its own input copy
        return weights + frame.k_len * frame.lanes
    return weights + frame.input_elements


def count_buffer_accesses(schedule: Schedule) -> EventCounts:
    """Walk the frames and count every buffer, converter and switch event.

    Tiles are read when they differ from the previous frame's tile. Without
    BPCA, OS keeps one partial sum in the reduction network's temporal
    accumulator and spills the rest; IS and WS spill every partial sum.
    """
    cfg = schedule.config
    n_k = schedule.k_blocks
    counts = EventCounts()
    previous_capacitor: Optional[int] = None
    for frame in schedule.frames:
        lanes = frame.lanes
        counts.frames += 1
        counts.dac_conversions += frame_dac_conversions(frame, cfg.arch)
        if frame.input_changed:
            counts.input_reads += frame.input_elements
        if frame.weight_changed:
            counts.weight_reads += frame.weight_elements
        if frame.is_final_for_output:
            counts.output_writes += lanes

        if cfg.has_bpca:
            if frame.is_final_for_output:
                counts.adc_conversions += lanes
            if previous_capacitor is not None and frame.capacitor != previous_capacitor:
                counts.capacitor_switches += 1
            previous_capacitor = frame.capacitor
            continue

        counts.adc_conversions += lanes
        if n_k == 1:
            continue
        if schedule.dataflow is Dataflow.OS:
            if frame.is_final_for_output:
                counts.psum_reads += lanes * (n_k - 1)
            else:
                counts.psum_writes += lanes
        else:
            counts.psum_writes += lanes
            if frame.is_final_for_output:
                counts.psum_reads += lanes * n_k
        if frame.is_final_for_output:
            counts.reduction_ops += lanes * (n_k - 1)
    return counts
