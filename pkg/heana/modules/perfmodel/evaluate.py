# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Whole-network latency, energy, FPS and FPS/W."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from heana.di.injector import get_settings
from heana.enums import ArchFamily, Dataflow, LayerKind
from heana.errors import CapacityExceededError, ConfigMismatchError
from heana.logging import logger
from heana.modules.dataflow import DpuConfig, EventCounts, profile_schedule
from heana.modules.dataflow.profile import ScheduleProfile
from heana.modules.linkbudget import dbm_to_watts
from heana.modules.perfmodel.config import AcceleratorConfig
from heana.modules.perfmodel.latency import profile_timing
from heana.modules.tensor import GemmDims
from heana.schema.report import LayerReport, SimReport
from heana.utils.format import datarate_label
from heana.utils.parallel import map_ordered

ENERGY_COMPONENTS = (
    "adc",
    "dac",
    "eo_tuning",
    "to_tuning",
    "capacitor_switch",
    "reduction",
    "pooling",
    "activation",
    "bpca",
    "edram",
    "bus",
    "router",
    "io",
    "laser",
)


@dataclass(frozen=True)
class LayerPlan:
    """A lowered layer: ``groups`` GEMMs of ``dims``, or an electronic op."""

    name: str
    kind: LayerKind
    dims: Optional[GemmDims] = None
    groups: int = 1
    outputs: int = 0


@dataclass
class LayerCost:
    """Per-image cost of one layer plus its one-off initialization."""

    name: str
    kind: LayerKind
    latency_s: float
    init_s: float = 0.0
    counts: EventCounts = field(default_factory=EventCounts)
    pool_ops: int = 0
    activation_ops: int = 0
    ring_tunings: int = 0
    violations: List[str] = field(default_factory=list)


@functools.lru_cache(maxsize=4096)
def _cached_profile(
    dims: GemmDims, cfg: DpuConfig, dataflow: Dataflow
) -> ScheduleProfile:
    return profile_schedule(dims, cfg, dataflow)


def _noc_latency(acc: AcceleratorConfig) -> float:
    p = acc.peripherals
    return p.bus.latency(p.noc_clock_hz) + p.router.latency(p.noc_clock_hz)


def _gemm_layer(
    layer: LayerPlan, acc: AcceleratorConfig, dataflow: Dataflow
) -> LayerCost:
    if layer.dims is None:
        raise ConfigMismatchError(f"layer '{layer.name}' has no GEMM dimensions")
    try:
        profile = _cached_profile(layer.dims, acc.dpu, dataflow)
    except CapacityExceededError as exc:
        raise exc.for_layer(layer.name) from exc

    timing = profile_timing(profile, acc)
    # outer iterations are dealt round-robin to the DPUs
    dealt = math.ceil(layer.groups * profile.outer / acc.dpu_count)
    cost = LayerCost(
        name=layer.name,
        kind=layer.kind,
        latency_s=dealt * timing.outer_s
        + timing.first_correction_s
        + _noc_latency(acc),
        counts=profile.counts().scaled(layer.groups),
        activation_ops=layer.groups * layer.dims.C * layer.dims.D,
    )
    if acc.dpu.arch.family is not ArchFamily.HEANA:
        to = acc.peripherals.to_tuning
        cost.init_s = to.latency(acc.peripherals.noc_clock_hz)
        cost.ring_tunings = acc.dpu_count * acc.dpu.N * acc.dpu.M
    if timing.violation:
        cost.violations.append(
            f"{layer.name}: TIR window {profile.window} needs "
            f"{acc.dpu.datarate / profile.window / 1e9:g} GS/s sampling, "
            f"cap is {acc.tir_cap_hz / 1e9:g} GS/s"
        )
    return cost


def _electronic_layer(layer: LayerPlan, acc: AcceleratorConfig) -> LayerCost:
    p = acc.peripherals
    unit = p.pooling_unit if layer.kind is LayerKind.POOL else p.activation_unit
    waves = math.ceil(layer.outputs / acc.dpu_count)
    cost = LayerCost(
        name=layer.name,
        kind=layer.kind,
        latency_s=waves * unit.latency(p.noc_clock_hz) + _noc_latency(acc),
    )
    if layer.kind is LayerKind.POOL:
        cost.pool_ops = layer.outputs
    else:
        cost.activation_ops = layer.outputs
    return cost


def evaluate_layer(
    layer: LayerPlan, acc: AcceleratorConfig, dataflow: Dataflow
) -> LayerCost:
    """Per-image cost of one layer."""
    if layer.kind.is_gemm:
        return _gemm_layer(layer, acc, dataflow)
    return _electronic_layer(layer, acc)


def _energy_breakdown(
    costs: Sequence[LayerCost],
    counts: EventCounts,
    acc: AcceleratorConfig,
    batch: int,
    latency_s: float,
) -> Dict[str, float]:
    p = acc.peripherals
    clock = p.noc_clock_hz
    dpu = acc.dpu
    dac = p.dac_heana if dpu.arch.family is ArchFamily.HEANA else p.dac_baseline
    pool_ops = batch * sum(cost.pool_ops for cost in costs)
    act_ops = batch * sum(cost.activation_ops for cost in costs)
    ring_tunings = sum(cost.ring_tunings for cost in costs)

    energy = {
        "adc": counts.adc_conversions * p.adc.event_energy(clock),
        "dac": counts.dac_conversions * dac.event_energy(clock),
        "eo_tuning": counts.dac_conversions * p.eo_tuning.event_energy(clock),
        "to_tuning": ring_tunings * p.to_tuning.event_energy(clock),
        "capacitor_switch": counts.capacitor_switches
        * p.capacitor_switch.event_energy(clock),
        "reduction": counts.reduction_ops * p.reduction_network.event_energy(clock),
        "pooling": pool_ops * p.pooling_unit.event_energy(clock),
        "activation": act_ops * p.activation_unit.event_energy(clock),
        "bpca": (acc.dpu_count * dpu.M * p.bpca.power_w * latency_s)
        if dpu.has_bpca
        else 0.0,
        "edram": acc.tiles * p.edram.power_w * latency_s,
        "bus": acc.tiles * p.bus.power_w * latency_s,
        "router": acc.tiles * p.router.power_w * latency_s,
        "io": p.io_interface.power_w * latency_s,
        "laser": dbm_to_watts(acc.laser_power_dbm) * dpu.N * acc.dpu_count * latency_s,
    }
    return {name: float(energy[name]) for name in ENERGY_COMPONENTS}


def evaluate(
    layers: Sequence[LayerPlan],
    acc: AcceleratorConfig,
    batch: int,
    dataflow: Dataflow,
    model: str = "workload",
    bits: int = 4,
    threads: Optional[int] = None,
) -> SimReport:
    """Run ``batch`` images through ``layers`` in sequence.

    Batches run layer-major: a layer's weight banks are initialized once, then
    all images pass through it. Layers may be costed concurrently; totals are
    always summed in layer order.

    Raises:
        ConfigMismatchError: If the workload cannot run on ``acc``.
        CapacityExceededError: If a layer needs more capacitors than ``p``.

    """
    if not layers:
        raise ConfigMismatchError("workload has no layers")
    if batch < 1:
        raise ConfigMismatchError(f"batch must be >= 1, got {batch}")
    if threads is None:
        threads = get_settings().threads

    costs: List[LayerCost] = map_ordered(
        lambda layer: evaluate_layer(layer, acc, dataflow), layers, threads
    )
    latency_s = math.fsum(cost.init_s + batch * cost.latency_s for cost in costs)
    counts = EventCounts()
    for cost in costs:
        counts = counts + cost.counts
    counts = counts.scaled(batch)

    breakdown = _energy_breakdown(costs, counts, acc, batch, latency_s)
    energy_j = math.fsum(breakdown.values())
    fps = batch / latency_s
    avg_power = energy_j / latency_s
    dpu = acc.dpu
    run_id = f"{model}/{dpu.arch.label}-{dataflow.name}@{datarate_label(dpu.datarate)}"
    logger.debug("%s: %.4g FPS, %.4g FPS/W", run_id, fps, fps / avg_power)

    return SimReport(
        run_id=run_id,
        model=model,
        arch=dpu.arch,
        dataflow=dataflow,
        datarate=dpu.datarate,
        bits=bits,
        N=dpu.N,
        M=dpu.M,
        dpu_count=acc.dpu_count,
        batch=batch,
        latency_s=latency_s,
        energy_j=energy_j,
        fps=fps,
        fps_per_watt=fps / avg_power,
        energy_breakdown=breakdown,
        counts=counts.as_dict(),
        violations=[v for cost in costs for v in cost.violations],
        layers=[
            LayerReport(
                name=cost.name,
                kind=cost.kind,
                latency_s=cost.latency_s,
                frames=cost.counts.frames,
                adc_conversions=cost.counts.adc_conversions,
            )
            for cost in costs
        ],
    )
