# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

from __future__ import annotations

import dataclasses
import math
from typing import List, Optional

import pytest

from heana.enums import Architecture, Dataflow, LayerKind
from heana.errors import (
    CapacityExceededError,
    ConfigMismatchError,
    MissingBaselineError,
)
from heana.modules.dataflow import (
    ComputationFrame,
    DpuConfig,
    count_adc,
    plan_schedule,
    profile_schedule,
)
from heana.modules.frontend import (
    RunConfig,
    build_accelerator,
    lower_manifest,
    parse_manifest,
    reference_accelerator,
    resolve_workload,
    shipped_workloads,
)
from heana.modules.linkbudget import max_n
from heana.modules.perfmodel import (
    ENERGY_COMPONENTS,
    AcceleratorConfig,
    FrameContext,
    LayerPlan,
    area_scale,
    compare,
    evaluate,
    evaluate_layer,
    frame_latency,
    profile_timing,
)
from heana.modules.tensor import GemmDims
from heana.schema.config import LinkBudgetParams, PeripheralModel
from heana.schema.report import SimReport
from heana.utils.compat import model_copy

from tests.unit_tests.modules.conftest import ALL_ARCHS, ALL_DATAFLOWS


def accelerator(
    arch: Architecture = Architecture.HEANA,
    n: int = 2,
    m: Optional[int] = None,
    dpu_count: int = 1,
    datarate: float = 1e9,
    peripherals: Optional[PeripheralModel] = None,
) -> AcceleratorConfig:
    return AcceleratorConfig(
        dpu=DpuConfig(N=n, M=m or n, p=64, datarate=datarate, arch=arch),
        dpu_count=dpu_count,
        peripherals=peripherals or PeripheralModel(),
    )


def gemm(name: str, C: int, K: int, D: int, groups: int = 1) -> LayerPlan:
    return LayerPlan(name, LayerKind.CONV, GemmDims(C, K, D), groups=groups)


def small_workload() -> List[LayerPlan]:
    return [
        gemm("conv1", 64, 27, 16),
        LayerPlan("relu1", LayerKind.ACTIVATION, outputs=64 * 16),
        LayerPlan("pool1", LayerKind.POOL, outputs=16 * 16),
        gemm("conv2", 16, 144, 32),
        gemm("dw3", 16, 9, 1, groups=32),
        LayerPlan("fc", LayerKind.FC, GemmDims(1, 512, 10)),
    ]


def manifest_layers(name: str) -> List[LayerPlan]:
    return lower_manifest(parse_manifest(resolve_workload(name)))


def test_frame_latency_without_memory_traffic():
    acc = accelerator()
    frame = ComputationFrame(
        frame_id=2,
        outer_iter=0,
        tf_cycle=0,
        ts_cycle=1,
        rows=(0, 1),
        k_range=(0, 2),
        cols=(0, 2),
        is_final_for_output=False,
        capacitor=1,
        input_changed=False,
        weight_changed=False,
    )
    ctx = FrameContext(Dataflow.OS, k_blocks=2, window=2, previous_capacitor=1)
    timing = frame_latency(frame, acc, ctx)
    assert timing.memory_s == 0.0
    assert timing.latency_s == timing.compute_s == pytest.approx(1e-9)
    assert not timing.violation


def test_tir_rate_cap():
    acc = accelerator(datarate=10e9)
    frame = plan_schedule(GemmDims(1, 20, 2), acc.dpu, Dataflow.OS).frames[0]
    temporal = frame_latency(frame, acc, FrameContext(Dataflow.OS, 10, window=10))
    assert not temporal.violation
    assert temporal.compute_s == pytest.approx(1e-10)
    multiplier = frame_latency(frame, acc, FrameContext(Dataflow.OS, 10, window=1))
    assert multiplier.violation
    assert multiplier.compute_s == pytest.approx(1e-9)


def test_baseline_ignores_tir_cap():
    acc = accelerator(Architecture.AMW, datarate=10e9)
    frame = plan_schedule(GemmDims(1, 4, 2), acc.dpu, Dataflow.OS).frames[0]
    timing = frame_latency(frame, acc, FrameContext(Dataflow.OS, 2, window=1))
    assert not timing.violation
    assert timing.compute_s == pytest.approx(1e-10)


def closing_frame() -> ComputationFrame:
    return ComputationFrame(
        frame_id=1,
        outer_iter=0,
        tf_cycle=0,
        ts_cycle=0,
        rows=(0, 1),
        k_range=(0, 2),
        cols=(0, 2),
        is_final_for_output=True,
        capacitor=1,
        input_changed=False,
        weight_changed=False,
    )


def test_bpca_readout_overlaps_the_next_frame():
    ctx = FrameContext(Dataflow.OS, k_blocks=1, previous_capacitor=1)
    heana = accelerator()
    adc = heana.peripherals.adc.latency(heana.peripherals.noc_clock_hz)
    assert adc < 1e-9
    timing = frame_latency(closing_frame(), heana, ctx)
    assert timing.latency_s == pytest.approx(1e-9)

    amw = accelerator(Architecture.AMW)
    timing = frame_latency(closing_frame(), amw, ctx)
    assert timing.latency_s == pytest.approx(1e-9 + adc)


def test_bpca_readout_bounds_fast_frames():
    acc = accelerator(datarate=10e9)
    adc = acc.peripherals.adc.latency(acc.peripherals.noc_clock_hz)
    ctx = FrameContext(Dataflow.OS, k_blocks=1, window=10, previous_capacitor=1)
    timing = frame_latency(closing_frame(), acc, ctx)
    assert timing.compute_s == pytest.approx(1e-10)
    assert timing.latency_s == pytest.approx(adc)


@pytest.mark.parametrize("k, levels", [(4, 1), (8, 2), (16, 3)])
def test_reduction_latency_per_tree_level(k: int, levels: int):
    acc = accelerator(Architecture.AMW)
    frames = plan_schedule(GemmDims(1, k, 2), acc.dpu, Dataflow.OS).frames
    final = frames[-1]
    assert final.is_final_for_output
    n_k = k // 2
    ctx = FrameContext(Dataflow.OS, n_k, window=n_k)
    with_tree = frame_latency(final, acc, ctx).latency_s
    without = frame_latency(
        dataclasses.replace(final, is_final_for_output=False), acc, ctx
    ).latency_s
    # final frames read back psums instead of spilling one
    memory_gap = (n_k - 2) * acc.peripherals.edram.latency_s
    expected = levels * 3.125e-9 + max(memory_gap, 0.0)
    assert with_tree - without == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("arch", ALL_ARCHS)
@pytest.mark.parametrize("dataflow", ALL_DATAFLOWS)
def test_profile_timing_matches_frame_walk(arch: Architecture, dataflow: Dataflow):
    acc = accelerator(arch, n=3, m=2)
    dims = GemmDims(5, 7, 6)
    profile = profile_schedule(dims, acc.dpu, dataflow)
    timing = profile_timing(profile, acc)

    total, previous = 0.0, None
    for frame in plan_schedule(dims, acc.dpu, dataflow).frames:
        ctx = FrameContext(dataflow, profile.k_blocks, profile.window, previous)
        total += frame_latency(frame, acc, ctx).latency_s
        previous = frame.capacitor
    closed = profile.outer * timing.outer_s + timing.first_correction_s
    assert closed == pytest.approx(total, rel=1e-9)


def test_area_scale_reference_counts(peripherals: PeripheralModel):
    reference = AcceleratorConfig(DpuConfig(N=83, M=83), 50, peripherals)
    heana, amw, maw, amw_bpca = area_scale(
        reference,
        [
            DpuConfig(N=83, M=83),
            DpuConfig(N=36, M=36, arch=Architecture.AMW),
            DpuConfig(N=43, M=43, arch=Architecture.MAW),
            DpuConfig(N=36, M=36, arch=Architecture.AMW_BPCA),
        ],
    )
    assert heana == 50
    assert amw == pytest.approx(207, rel=0.1)
    assert maw == pytest.approx(280, rel=0.1)
    assert amw_bpca == amw


def test_area_scale_keeps_at_least_one_dpu(peripherals: PeripheralModel):
    reference = AcceleratorConfig(DpuConfig(N=2, M=2), 1, peripherals)
    assert area_scale(reference, [DpuConfig(N=64, M=64)]) == [1]


def test_reference_accelerator(params: LinkBudgetParams, peripherals):
    reference = reference_accelerator(params, peripherals)
    assert reference.dpu_count == 50
    assert reference.dpu.N == max_n(4, 1e9, params, Architecture.HEANA).N_max


def test_evaluate_energy_closure():
    acc = accelerator(Architecture.MAW, n=4)
    report = evaluate(small_workload(), acc, 2, Dataflow.IS)
    assert list(report.energy_breakdown) == list(ENERGY_COMPONENTS)
    assert math.fsum(report.energy_breakdown.values()) == pytest.approx(
        report.energy_j, rel=1e-9
    )
    assert report.fps == pytest.approx(2 / report.latency_s, rel=1e-12)
    power = report.energy_j / report.latency_s
    assert report.fps_per_watt == pytest.approx(report.fps / power, rel=1e-12)
    assert [layer.name for layer in report.layers] == [
        layer.name for layer in small_workload()
    ]
    assert report.run_id == "workload/MAW-IS@1GS/s"


def test_evaluate_is_deterministic_across_threads():
    layers = small_workload()
    acc = accelerator(Architecture.AMW_BPCA, n=4, dpu_count=3)
    sequential = evaluate(layers, acc, 1, Dataflow.WS, threads=0)
    parallel = evaluate(layers, acc, 1, Dataflow.WS, threads=4)
    assert sequential == parallel


def test_evaluate_batch_scales_latency():
    layers = small_workload()
    acc = accelerator(n=4)
    one = evaluate(layers, acc, 1, Dataflow.OS)
    many = evaluate(layers, acc, 8, Dataflow.OS)
    assert many.latency_s == pytest.approx(8 * one.latency_s, rel=1e-12)
    assert many.counts["adc_conversions"] == 8 * one.counts["adc_conversions"]
    assert many.fps == pytest.approx(one.fps, rel=1e-12)


def test_ring_initialization_is_paid_once_per_layer():
    layers = [gemm("fc", 1, 8, 8)]
    acc = accelerator(Architecture.AMW, n=4)
    one = evaluate(layers, acc, 1, Dataflow.OS)
    two = evaluate(layers, acc, 2, Dataflow.OS)
    init = two.latency_s - 2 * (two.latency_s - one.latency_s)
    assert init == pytest.approx(4e-6, rel=1e-6)
    assert one.energy_breakdown["to_tuning"] > 0
    heana = evaluate(layers, accelerator(n=4), 1, Dataflow.OS)
    assert heana.energy_breakdown["to_tuning"] == 0


def test_more_dpus_shorten_parallel_layers():
    layers = [gemm("conv", 256, 16, 4)]
    one = evaluate_layer(layers[0], accelerator(n=4, dpu_count=1), Dataflow.OS)
    two = evaluate_layer(layers[0], accelerator(n=4, dpu_count=2), Dataflow.OS)
    assert two.latency_s / one.latency_s == pytest.approx(0.5, rel=0.05)


def test_slower_edram_never_helps():
    layers = small_workload()
    fast = PeripheralModel()
    slow = model_copy(
        fast, {"edram": {"power_mw": 41.1, "latency_s": 5e-9, "area_mm2": 0.166}}
    )
    for dataflow in ALL_DATAFLOWS:
        base = evaluate(layers, accelerator(n=4, peripherals=fast), 1, dataflow)
        worse = evaluate(layers, accelerator(n=4, peripherals=slow), 1, dataflow)
        assert worse.latency_s >= base.latency_s


def test_evaluate_rejects_bad_workloads():
    with pytest.raises(ConfigMismatchError):
        evaluate([], accelerator(), 1, Dataflow.OS)
    with pytest.raises(ConfigMismatchError):
        evaluate(small_workload(), accelerator(), 0, Dataflow.OS)


def test_evaluate_names_the_layer_over_capacity():
    acc = AcceleratorConfig(DpuConfig(N=2, M=2, p=2), dpu_count=1)
    with pytest.raises(CapacityExceededError) as exc_info:
        evaluate([gemm("wide", 16, 8, 1)], acc, 1, Dataflow.WS)
    assert exc_info.value.layer == "wide"
    assert "wide" in str(exc_info.value)


def test_rate_violations_are_reported():
    layers = [gemm("deep", 2, 64, 8)]
    fast = accelerator(n=4, datarate=10e9)
    assert evaluate(layers, fast, 1, Dataflow.OS).violations == []
    violations = evaluate(layers, fast, 1, Dataflow.IS).violations
    assert len(violations) == 1
    assert violations[0].startswith("deep:")


def test_bpca_saves_adc_energy():
    layers = small_workload()
    heana = evaluate(layers, accelerator(n=4), 1, Dataflow.OS)
    amw = evaluate(layers, accelerator(Architecture.AMW, n=4), 1, Dataflow.OS)
    expected = {"heana": 0, "amw": 0}
    for layer in layers:
        if layer.dims is None:
            continue
        for key, arch in (("heana", Architecture.HEANA), ("amw", Architecture.AMW)):
            cfg = DpuConfig(N=4, M=4, arch=arch)
            expected[key] += layer.groups * count_adc(layer.dims, cfg, Dataflow.OS)
    assert heana.counts["adc_conversions"] == expected["heana"]
    assert amw.counts["adc_conversions"] == expected["amw"]
    per_conversion = PeripheralModel().adc.event_energy()
    assert heana.energy_breakdown["adc"] == pytest.approx(
        expected["heana"] * per_conversion
    )
    assert heana.energy_breakdown["adc"] < amw.energy_breakdown["adc"]


@pytest.mark.parametrize("gsps", [1.0, 5.0, 10.0])
@pytest.mark.parametrize("workload", shipped_workloads())
def test_shipped_workload_orderings(workload: str, gsps: float, params, peripherals):
    layers = manifest_layers(workload)

    def run(arch: Architecture, dataflow: Dataflow) -> SimReport:
        acc = build_accelerator(
            RunConfig(arch=arch, datarate_gsps=gsps), params, peripherals
        )
        return evaluate(layers, acc, 1, dataflow, model=workload)

    heana = [run(Architecture.HEANA, dataflow).fps for dataflow in ALL_DATAFLOWS]
    assert heana[0] >= heana[1] >= heana[2]
    for dataflow in ALL_DATAFLOWS:
        for plain, bpca in (
            (Architecture.AMW, Architecture.AMW_BPCA),
            (Architecture.MAW, Architecture.MAW_BPCA),
        ):
            assert run(bpca, dataflow).fps > run(plain, dataflow).fps

    best = run(Architecture.HEANA, Dataflow.OS)
    baseline = run(Architecture.AMW, Dataflow.WS)
    assert best.fps > 5 * baseline.fps
    assert best.fps_per_watt > 5 * baseline.fps_per_watt


def make_report(model: str, config: str, fps: float, fpw: float) -> SimReport:
    return SimReport(
        run_id=f"{model}/{config}",
        model=model,
        arch=Architecture.HEANA,
        dataflow=Dataflow.OS,
        datarate=1e9,
        bits=4,
        N=8,
        M=8,
        dpu_count=1,
        batch=1,
        latency_s=1.0 / fps,
        energy_j=1.0 / fpw,
        fps=fps,
        fps_per_watt=fpw,
    )


def test_compare_against_itself():
    report = make_report("resnet50", "AMW-WS@1GS/s", 120.0, 3.0)
    table = compare([report], "AMW-WS@1GS/s")
    row = table.rows[0]
    assert (row.fps, row.fps_per_watt, row.latency_s, row.energy_j) == (1, 1, 1, 1)
    assert table.gmean[0].run_id == "gmean/AMW-WS@1GS/s"


def test_compare_ratios_and_gmean():
    reports = [
        make_report("googlenet", "AMW-WS@1GS/s", 100.0, 2.0),
        make_report("googlenet", "HEANA-OS@1GS/s", 200.0, 10.0),
        make_report("resnet50", "AMW-WS@1GS/s", 50.0, 1.0),
        make_report("resnet50", "HEANA-OS@1GS/s", 400.0, 3.0),
    ]
    table = compare(reports, "AMW-WS@1GS/s")
    heana_rows = [row for row in table.rows if row.config == "HEANA-OS@1GS/s"]
    assert [row.fps for row in heana_rows] == pytest.approx([2.0, 8.0])
    means = {row.config: row for row in table.gmean}
    assert means["HEANA-OS@1GS/s"].fps == pytest.approx(math.sqrt(2.0 * 8.0))
    assert means["HEANA-OS@1GS/s"].fps_per_watt == pytest.approx(
        math.exp((math.log(5.0) + math.log(3.0)) / 2)
    )
    assert means["AMW-WS@1GS/s"].fps == pytest.approx(1.0)


def test_compare_missing_baseline():
    reports = [
        make_report("googlenet", "AMW-WS@1GS/s", 100.0, 2.0),
        make_report("resnet50", "HEANA-OS@1GS/s", 400.0, 3.0),
    ]
    with pytest.raises(MissingBaselineError) as exc_info:
        compare(reports, "AMW-WS@1GS/s")
    assert "resnet50" in str(exc_info.value)
    with pytest.raises(MissingBaselineError):
        compare(reports, "MAW-OS@1GS/s")
