# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Closed-form schedule profile.

A schedule repeats the same frame pattern in every outer iteration; only the
very first frame differs (nothing is loaded yet and no capacitor is held).
The profile stores per-frame features of one steady-state outer iteration as
arrays plus the features of that first frame, which is enough to total any
per-frame quantity without enumerating the schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
import numpy.typing as npt

from heana.enums import ArchFamily, Dataflow
from heana.modules.dataflow.capacitor import check_capacity
from heana.modules.dataflow.schema import (
    ComputationFrame,
    DpuConfig,
    EventCounts,
)
from heana.modules.tensor import GemmDims

Features = Dict[str, npt.NDArray[np.int64]]

_COUNT_FIELDS = {
    "frames": "frames",
    "adc_conversions": "adc_conversions",
    "dac_conversions": "dac_conversions",
    "input_reads": "input_reads",
    "weight_reads": "weight_reads",
    "output_writes": "output_writes",
    "psum_reads": "psum_reads",
    "psum_writes": "psum_writes",
    "capacitor_switches": "switch",
    "reduction_ops": "reduction_ops",
}


def temporal_window(dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow) -> int:
    """Consecutive frames integrating onto the same capacitor."""
    n_k = cfg.k_blocks(dims)
    if dataflow is Dataflow.OS or cfg.inner_blocks(dims, dataflow) == 1:
        return n_k
    return 1


def _derive(base: Features, cfg: DpuConfig, dataflow: Dataflow, n_k: int) -> Features:
    """Expand base features into every counted or timed per-frame quantity."""
    lanes, k_len, final = base["lanes"], base["k_len"], base["final"]
    input_changed, weight_changed = base["input_changed"], base["weight_changed"]
    ones = np.ones_like(lanes)
    zeros = np.zeros_like(lanes)

    out: Features = dict(base)
    out["frames"] = ones
    out["input_tx"] = input_changed * base["input_rows"]
    out["weight_tx"] = weight_changed.copy()
    out["input_reads"] = input_changed * base["input_elems"]
    out["weight_reads"] = weight_changed * base["weight_elems"]
    out["output_writes"] = final * lanes

    family = cfg.arch.family
    if family is ArchFamily.HEANA:
        out["dac_conversions"] = k_len * lanes
        out["eo_event"] = zeros
    else:
        per_input = k_len * lanes if family is ArchFamily.AMW else base["input_elems"]
        out["dac_conversions"] = out["weight_reads"] + input_changed * per_input
        out["eo_event"] = weight_changed.copy()

    out["psum_write_tx"] = zeros
    out["psum_read_tx"] = zeros
    out["reduction_levels"] = zeros
    out["reduction_ops"] = zeros
    if cfg.has_bpca:
        out["adc_conversions"] = final * lanes
        out["adc_event"] = final.copy()
    else:
        out["switch"] = zeros
        out["adc_conversions"] = lanes.copy()
        out["adc_event"] = ones
        if n_k > 1:
            if dataflow is Dataflow.OS:
                out["psum_write_tx"] = 1 - final
                out["psum_read_tx"] = final * (n_k - 1)
            else:
                out["psum_write_tx"] = ones
                out["psum_read_tx"] = final * n_k
            out["reduction_levels"] = final * math.ceil(math.log2(n_k))
            out["reduction_ops"] = final * lanes * (n_k - 1)
    out["psum_writes"] = out["psum_write_tx"] * lanes
    out["psum_reads"] = out["psum_read_tx"] * lanes
    return out


def _as_int(values: npt.ArrayLike) -> npt.NDArray[np.int64]:
    return np.asarray(values, dtype=np.int64)


@dataclass
class ScheduleProfile:
    """Per-frame features of a schedule in compressed form."""

    dataflow: Dataflow
    dims: GemmDims
    config: DpuConfig
    outer: int
    inner: int
    k_blocks: int
    window: int
    steady: Features
    first: Features

    @property
    def frames_per_outer(self) -> int:
        """Frames in one outer iteration."""
        return self.inner * self.k_blocks

    def total(self, name: str) -> int:
        """Sum of a feature over the whole schedule."""
        steady = self.steady[name]
        return int(self.outer * steady.sum() + self.first[name][0] - steady[0])

    def counts(self) -> EventCounts:
        """Event counters, equal to walking the explicit schedule."""
        return EventCounts(
            **{field: self.total(name) for field, name in _COUNT_FIELDS.items()}
        )


def profile_schedule(
    dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow
) -> ScheduleProfile:
    """Profile the schedule ``plan_schedule`` would produce.

    Raises:
        CapacityExceededError: As ``assign_capacitors`` would.

    """
    check_capacity(dims, cfg, dataflow)
    n_outer = cfg.outer_iterations(dims, dataflow)
    n_inner = cfg.inner_blocks(dims, dataflow)
    n_k = cfg.k_blocks(dims)
    ws = dataflow is Dataflow.WS

    if dataflow is Dataflow.OS:
        inner = np.repeat(np.arange(n_inner), n_k)
        kb = np.tile(np.arange(n_k), n_inner)
    else:
        inner = np.tile(np.arange(n_inner), n_k)
        kb = np.repeat(np.arange(n_k), n_inner)

    lanes = np.minimum(cfg.M, (dims.C if ws else dims.D) - inner * cfg.M)
    k_len = np.minimum(cfg.N, dims.K - kb * cfg.N)
    input_id = inner * n_k + kb if ws else kb
    weight_id = kb if ws else kb * n_inner + inner

    input_changed = np.empty(len(kb), dtype=bool)
    weight_changed = np.empty(len(kb), dtype=bool)
    input_changed[1:] = input_id[1:] != input_id[:-1]
    weight_changed[1:] = weight_id[1:] != weight_id[:-1]
    # entering an outer iteration: the outer loop's operand always changes
    input_changed[0] = input_id[0] != input_id[-1] if ws else True
    weight_changed[0] = True if ws else weight_id[0] != weight_id[-1]

    if cfg.has_bpca and dataflow is not Dataflow.OS and n_k > 1:
        capacitor = inner + 1
    else:
        capacitor = np.ones_like(inner)
    switch = np.empty(len(kb), dtype=bool)
    switch[1:] = capacitor[1:] != capacitor[:-1]
    switch[0] = capacitor[0] != capacitor[-1]

    rows = lanes if ws else np.ones_like(lanes)
    base: Features = {
        "lanes": _as_int(lanes),
        "k_len": _as_int(k_len),
        "final": _as_int(kb == n_k - 1),
        "input_changed": _as_int(input_changed),
        "weight_changed": _as_int(weight_changed),
        "switch": _as_int(switch),
        "input_rows": _as_int(rows),
        "input_elems": _as_int(rows * k_len),
        "weight_elems": _as_int(k_len * (1 if ws else lanes)),
    }
    first = {name: values[:1].copy() for name, values in base.items()}
    first["input_changed"][0] = 1
    first["weight_changed"][0] = 1
    first["switch"][0] = 0

    return ScheduleProfile(
        dataflow=dataflow,
        dims=dims,
        config=cfg,
        outer=n_outer,
        inner=n_inner,
        k_blocks=n_k,
        window=temporal_window(dims, cfg, dataflow),
        steady=_derive(base, cfg, dataflow, n_k),
        first=_derive(first, cfg, dataflow, n_k),
    )


def frame_features(
    frame: ComputationFrame,
    cfg: DpuConfig,
    dataflow: Dataflow,
    k_blocks: int,
    previous_capacitor: Optional[int] = None,
) -> Features:
    """Features of one explicit frame, shaped like a one-frame profile."""
    switch = previous_capacitor is not None and frame.capacitor != previous_capacitor
    base: Features = {
        "lanes": _as_int([frame.lanes]),
        "k_len": _as_int([frame.k_len]),
        "final": _as_int([frame.is_final_for_output]),
        "input_changed": _as_int([frame.input_changed]),
        "weight_changed": _as_int([frame.weight_changed]),
        "switch": _as_int([switch]),
        "input_rows": _as_int([frame.rows[1] - frame.rows[0]]),
        "input_elems": _as_int([frame.input_elements]),
        "weight_elems": _as_int([frame.weight_elements]),
    }
    return _derive(base, cfg, dataflow, k_blocks)
