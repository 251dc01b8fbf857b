# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Per-frame latency.

A frame costs ``max(compute, memory)`` with double-buffered tiles, plus the
serial tail of capacitor switching, ADC conversion, reduction tree levels and
EO ring retuning. A BPCA holds its closed charge on the TIR while the next
frame integrates, so its ADC conversion joins the overlapped part instead of
the serial tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt

from heana.enums import Dataflow
from heana.modules.dataflow import ComputationFrame, frame_features
from heana.modules.dataflow.profile import Features, ScheduleProfile
from heana.modules.perfmodel.config import AcceleratorConfig


@dataclass(frozen=True)
class FrameContext:
    """Schedule position of a frame."""

    dataflow: Dataflow
    k_blocks: int
    window: int = 1
    previous_capacitor: Optional[int] = None


@dataclass(frozen=True)
class FrameTiming:
    """Latency of one frame and its parts."""

    latency_s: float
    compute_s: float
    memory_s: float
    violation: bool


@dataclass(frozen=True)
class ProfileTiming:
    """Latency of one steady outer iteration plus the first-frame correction."""

    outer_s: float
    first_correction_s: float
    compute_s: float
    violation: bool


def dpe_rate(acc: AcceleratorConfig, window: int) -> float:
    """Symbols per second a DPE sustains.

    A BPCA integrating ``window`` frames per readout needs its TIR to sample
    at ``datarate / window``; the cap slows the DPE when it cannot.
    """
    datarate = acc.dpu.datarate
    if not acc.dpu.has_bpca:
        return datarate
    return min(datarate, acc.tir_cap_hz * window)


def rate_violation(acc: AcceleratorConfig, window: int) -> bool:
    """Whether the TIR cap binds at this window."""
    return acc.dpu.has_bpca and acc.dpu.datarate > acc.tir_cap_hz * window


def latency_terms(
    features: Features, acc: AcceleratorConfig, compute_s: float
) -> npt.NDArray[np.float64]:
    """Vectorized frame latencies for a feature block."""
    p = acc.peripherals
    transactions = (
        features["input_tx"]
        + features["weight_tx"]
        + features["psum_write_tx"]
        + features["psum_read_tx"]
    )
    memory = transactions * p.edram.latency(p.noc_clock_hz)
    adc = features["adc_event"] * p.adc.latency(p.noc_clock_hz)
    overlapped = np.maximum(compute_s, memory)
    tail = (
        features["switch"] * p.capacitor_switch.latency(p.noc_clock_hz)
        + features["reduction_levels"] * p.reduction_network.latency(p.noc_clock_hz)
        + features["eo_event"] * p.eo_tuning.latency(p.noc_clock_hz)
    )
    if acc.dpu.has_bpca:
        return np.maximum(overlapped, adc) + tail
    return overlapped + adc + tail


def frame_latency(
    frame: ComputationFrame, acc: AcceleratorConfig, ctx: FrameContext
) -> FrameTiming:
    """Latency of one explicit frame."""
    features = frame_features(
        frame, acc.dpu, ctx.dataflow, ctx.k_blocks, ctx.previous_capacitor
    )
    compute = 1.0 / dpe_rate(acc, ctx.window)
    transactions = int(
        features["input_tx"][0]
        + features["weight_tx"][0]
        + features["psum_write_tx"][0]
        + features["psum_read_tx"][0]
    )
    p = acc.peripherals
    return FrameTiming(
        latency_s=float(latency_terms(features, acc, compute)[0]),
        compute_s=compute,
        memory_s=transactions * p.edram.latency(p.noc_clock_hz),
        violation=rate_violation(acc, ctx.window),
    )


def profile_timing(profile: ScheduleProfile, acc: AcceleratorConfig) -> ProfileTiming:
    """Latency of a profiled schedule on one DPU."""
    compute = 1.0 / dpe_rate(acc, profile.window)
    steady = latency_terms(profile.steady, acc, compute)
    first = latency_terms(profile.first, acc, compute)
    return ProfileTiming(
        outer_s=float(steady.sum()),
        first_correction_s=float(first[0] - steady[0]),
        compute_s=compute,
        violation=rate_violation(acc, profile.window),
    )
