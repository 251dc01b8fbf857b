# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

from __future__ import annotations

import io
import itertools
import os
from typing import Iterator, List

import numpy as np
import pytest
from scipy.stats import norm

from heana.enums import Architecture, Dataflow, Routing
from heana.errors import CapacityExceededError, ConfigParseError, InvalidConfigError
from heana.modules.dataflow import (
    DpuConfig,
    assign_capacitors,
    check_capacity,
    count_adc,
    dump_trace,
    execute_functional,
    frame_count,
    iter_frames,
    iter_trace,
    load_trace,
    max_in_flight,
    plan_schedule,
    profile_schedule,
    run_functional,
    tile_map,
)
from heana.modules.frontend import lower_manifest, parse_manifest, resolve_workload
from heana.modules.photonic import NoiseModel
from heana.modules.tensor import GemmDims, GemmProblem, QuantMatrix, gemm_exact

from tests.unit_tests.modules.conftest import ALL_ARCHS, ALL_DATAFLOWS, TRACE_DIR
from tests.unit_tests.modules.helpers.oracles import (
    loop_nest_reads,
    max_open_tiles,
    product_terms,
)


def random_cases(
    rng: np.random.Generator, count: int, max_dim: int = 8, max_tile: int = 4
) -> Iterator[tuple]:
    for _ in range(count):
        dims = GemmDims(*(int(x) for x in rng.integers(1, max_dim + 1, size=3)))
        n, m = (int(x) for x in rng.integers(1, max_tile + 1, size=2))
        yield dims, n, m


def test_frame_count_worked_example(worked_dims: GemmDims, worked_cfg: DpuConfig):
    for dataflow in ALL_DATAFLOWS:
        assert frame_count(worked_dims, worked_cfg, dataflow) == 16


def test_frame_count_remainders():
    cfg = DpuConfig(N=2, M=2)
    dims = GemmDims(7, 5, 3)
    assert frame_count(dims, cfg) == 42
    assert frame_count(dims, cfg, Dataflow.IS) == 42
    # WS walks columns of W outermost
    assert frame_count(dims, cfg, Dataflow.WS) == 3 * 4 * 3


def test_frame_count_single_tile_per_row():
    cfg = DpuConfig(N=4, M=3)
    assert frame_count(GemmDims(5, 4, 3), cfg) == 5


def test_frame_count_matches_schedule(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 30, max_dim=16, max_tile=8):
        cfg = DpuConfig(N=n, M=m, p=64)
        for dataflow in ALL_DATAFLOWS:
            frames = list(iter_frames(dims, cfg, dataflow))
            assert len(frames) == frame_count(dims, cfg, dataflow)


def test_tile_map_routing():
    cfg = DpuConfig(N=4, M=2)
    os_map = tile_map(cfg, Dataflow.OS)
    assert os_map.input_tile == (1, 4)
    assert os_map.weight_tile == (4, 2)
    assert os_map.input_routing is Routing.BROADCAST
    ws_map = tile_map(cfg, Dataflow.WS)
    assert ws_map.input_tile == (2, 4)
    assert ws_map.weight_routing is Routing.BROADCAST


def test_os_frames_hold_the_output_tile(worked_dims: GemmDims, worked_cfg: DpuConfig):
    frames = plan_schedule(worked_dims, worked_cfg, Dataflow.OS).frames
    assert frames[0].outputs() == [(0, 0), (0, 1)]
    assert frames[1].outputs() == [(0, 0), (0, 1)]
    assert frames[1].is_final_for_output


def test_ws_first_frame_spans_a_column(worked_dims: GemmDims, worked_cfg: DpuConfig):
    frames = plan_schedule(worked_dims, worked_cfg, Dataflow.WS).frames
    assert frames[0].outputs() == [(0, 0), (1, 0)]


def test_partial_k_block_is_clipped():
    frames = list(iter_frames(GemmDims(1, 3, 1), DpuConfig(N=2, M=1), Dataflow.OS))
    assert [f.k_range for f in frames] == [(0, 2), (2, 3)]
    assert [f.tf_cycle for f in frames] == [0, 1]


@pytest.mark.parametrize(
    "name, arch, dataflow",
    [
        ("heana_os", Architecture.HEANA, Dataflow.OS),
        ("heana_is", Architecture.HEANA, Dataflow.IS),
        ("heana_ws", Architecture.HEANA, Dataflow.WS),
        ("amw_os", Architecture.AMW, Dataflow.OS),
    ],
)
def test_golden_trace(worked_dims: GemmDims, name: str, arch: Architecture, dataflow):
    cfg = DpuConfig(N=2, M=2, p=4, arch=arch)
    with open(os.path.join(TRACE_DIR, f"{name}_4x4x4_n2m2.tsv")) as f:
        expected = f.read().splitlines()
    assert list(iter_trace(plan_schedule(worked_dims, cfg, dataflow))) == expected


def test_trace_round_trip(worked_dims: GemmDims, worked_cfg: DpuConfig):
    schedule = plan_schedule(worked_dims, worked_cfg, Dataflow.IS)
    stream = io.StringIO()
    dump_trace(schedule, stream)
    frames = load_trace(stream.getvalue().splitlines())
    assert frames == schedule.frames


def test_load_trace_reports_the_line():
    with pytest.raises(ConfigParseError) as exc_info:
        load_trace(["frame=1\touter=0", ""], source="bad.tsv")
    assert "bad.tsv:1" in str(exc_info.value)


def test_product_terms_cover_gemm_once(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 20):
        cfg = DpuConfig(N=n, M=m, p=64)
        expected = sorted(
            itertools.product(range(dims.C), range(dims.K), range(dims.D))
        )
        for dataflow in ALL_DATAFLOWS:
            terms = product_terms(list(iter_frames(dims, cfg, dataflow)))
            assert sorted(terms) == expected


def test_count_adc_closed_form(worked_dims: GemmDims):
    for dataflow in ALL_DATAFLOWS:
        assert count_adc(worked_dims, DpuConfig(N=2, M=2), dataflow) == 16
        amw = DpuConfig(N=2, M=2, arch=Architecture.AMW)
        assert count_adc(worked_dims, amw, dataflow) == 32
    # a single k block makes both formulas agree
    dims = GemmDims(3, 2, 5)
    for arch in ALL_ARCHS:
        assert count_adc(dims, DpuConfig(N=2, M=2, arch=arch), Dataflow.OS) == 15


def test_adc_readouts_match_closed_form(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 200):
        inputs = QuantMatrix.random(rng, dims.C, dims.K, 4, signed=False)
        weights = QuantMatrix.random(rng, dims.K, dims.D, 4, signed=True)
        problem = GemmProblem(inputs, weights)
        for arch, dataflow in itertools.product(ALL_ARCHS, ALL_DATAFLOWS):
            cfg = DpuConfig(N=n, M=m, p=64, arch=arch)
            result = run_functional(problem, cfg, dataflow)
            assert result.adc_readouts == count_adc(dims, cfg, dataflow)
            assert result.schedule.counters.adc_conversions == result.adc_readouts


def test_os_reuses_one_capacitor(worked_dims: GemmDims, worked_cfg: DpuConfig):
    schedule = plan_schedule(worked_dims, worked_cfg, Dataflow.OS)
    assert {frame.capacitor for frame in schedule.frames} == {1}
    assert schedule.counters.capacitor_switches == 0


def test_is_alternates_capacitors(worked_dims: GemmDims, worked_cfg: DpuConfig):
    frames = plan_schedule(worked_dims, worked_cfg, Dataflow.IS).frames
    assert [frame.capacitor for frame in frames[:4]] == [1, 2, 1, 2]


def test_switches_follow_output_tiles(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 20):
        cfg = DpuConfig(N=n, M=m, p=64)
        for dataflow in (Dataflow.IS, Dataflow.WS):
            schedule = plan_schedule(dims, cfg, dataflow)
            if schedule.k_blocks == 1 or schedule.inner_blocks == 1:
                continue
            frames = schedule.frames
            tile_changes = sum(
                a.output_block != b.output_block for a, b in zip(frames, frames[1:])
            )
            assert schedule.counters.capacitor_switches == tile_changes


def test_capacity_exceeded():
    dims = GemmDims(10, 4, 1)
    cfg = DpuConfig(N=2, M=2, p=4)
    assert max_in_flight(dims, cfg, Dataflow.WS) == 5
    assert max_open_tiles(list(iter_frames(dims, cfg, Dataflow.WS))) == 5
    with pytest.raises(CapacityExceededError):
        plan_schedule(dims, cfg, Dataflow.WS)
    with pytest.raises(CapacityExceededError):
        profile_schedule(dims, cfg, Dataflow.WS)
    # OS needs a single capacitor for the same GEMM
    plan_schedule(dims, cfg, Dataflow.OS)


def test_capacity_is_ignored_without_bpca():
    cfg = DpuConfig(N=2, M=2, p=1, arch=Architecture.MAW)
    check_capacity(GemmDims(10, 4, 1), cfg, Dataflow.WS)


def test_assign_capacitors_requires_bpca(worked_dims: GemmDims):
    cfg = DpuConfig(N=2, M=2, arch=Architecture.AMW)
    schedule = plan_schedule(worked_dims, cfg, Dataflow.OS)
    with pytest.raises(InvalidConfigError):
        assign_capacitors(schedule)


def test_max_in_flight_matches_brute_force(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 30):
        cfg = DpuConfig(N=n, M=m, p=64)
        for dataflow in ALL_DATAFLOWS:
            frames = list(iter_frames(dims, cfg, dataflow))
            assert max_open_tiles(frames) == max_in_flight(dims, cfg, dataflow)


@pytest.mark.parametrize("dataflow", ALL_DATAFLOWS)
def test_googlenet_fits_the_capacitor_bank(dataflow: Dataflow):
    manifest = parse_manifest(resolve_workload("googlenet"))
    cfg = DpuConfig(N=83, M=83)
    for plan in lower_manifest(manifest):
        if plan.dims is not None:
            assert max_in_flight(plan.dims, cfg, dataflow) <= cfg.p
            check_capacity(plan.dims, cfg, dataflow)


def test_buffer_reads_match_loop_nest(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 25):
        cfg = DpuConfig(N=n, M=m, p=64)
        for dataflow in ALL_DATAFLOWS:
            counts = plan_schedule(dims, cfg, dataflow).counters
            reads = loop_nest_reads(dims.C, dims.K, dims.D, n, m, dataflow)
            assert counts.input_reads == sum(reads["input"].values())
            assert counts.weight_reads == sum(reads["weight"].values())


def test_stationary_operand_is_read_once(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 25):
        cfg = DpuConfig(N=n, M=m, p=64)
        is_counts = plan_schedule(dims, cfg, Dataflow.IS).counters
        ws_counts = plan_schedule(dims, cfg, Dataflow.WS).counters
        assert is_counts.input_reads == dims.C * dims.K
        assert ws_counts.weight_reads == dims.K * dims.D


def test_other_dataflows_reread(worked_dims: GemmDims, worked_cfg: DpuConfig):
    counts = {
        dataflow: plan_schedule(worked_dims, worked_cfg, dataflow).counters
        for dataflow in ALL_DATAFLOWS
    }
    assert counts[Dataflow.OS].input_reads > 16
    assert counts[Dataflow.OS].weight_reads > 16
    assert counts[Dataflow.IS].weight_reads > 16
    assert counts[Dataflow.WS].input_reads > 16


def test_bpca_has_no_psum_traffic(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 10):
        for arch in (Architecture.HEANA, Architecture.AMW_BPCA, Architecture.MAW_BPCA):
            cfg = DpuConfig(N=n, M=m, p=64, arch=arch)
            for dataflow in ALL_DATAFLOWS:
                counts = plan_schedule(dims, cfg, dataflow).counters
                assert counts.psum_reads + counts.psum_writes == 0
                assert counts.reduction_ops == 0


def test_amw_os_psum_traffic(worked_dims: GemmDims):
    cfg = DpuConfig(N=2, M=2, arch=Architecture.AMW)
    counts = plan_schedule(worked_dims, cfg, Dataflow.OS).counters
    assert counts.psum_writes == 16
    assert counts.psum_reads == 16
    assert counts.output_writes == 16


def test_profile_counts_match_walk(rng: np.random.Generator):
    for dims, n, m in random_cases(rng, 15, max_dim=12):
        for arch, dataflow in itertools.product(ALL_ARCHS, ALL_DATAFLOWS):
            cfg = DpuConfig(N=n, M=m, p=64, arch=arch)
            profile = profile_schedule(dims, cfg, dataflow)
            assert profile.counts() == plan_schedule(dims, cfg, dataflow).counters


def _random_problem(rng: np.random.Generator, dims: GemmDims) -> GemmProblem:
    return GemmProblem(
        QuantMatrix.random(rng, dims.C, dims.K, 4, signed=False),
        QuantMatrix.random(rng, dims.K, dims.D, 4, signed=True),
    )


def test_functional_worked_example(rng: np.random.Generator, worked_dims, worked_cfg):
    problem = _random_problem(rng, worked_dims)
    out = execute_functional(problem, worked_cfg, Dataflow.OS)
    assert out == gemm_exact(problem)


def test_functional_identity(rng: np.random.Generator):
    weights = QuantMatrix.random(rng, 4, 4, 4, signed=True)
    problem = GemmProblem(QuantMatrix.identity(4), weights)
    for dataflow in ALL_DATAFLOWS:
        out = execute_functional(problem, DpuConfig(N=2, M=2, p=4), dataflow)
        assert np.array_equal(out.data, weights.data)


def test_functional_equivalence(rng: np.random.Generator):
    cases: List[tuple] = []
    for dims, n, m in random_cases(rng, 100, max_dim=32, max_tile=8):
        cases.append((_random_problem(rng, dims), n, m))
    for problem, n, m in cases:
        expected = gemm_exact(problem)
        for arch, dataflow in itertools.product(ALL_ARCHS, ALL_DATAFLOWS):
            cfg = DpuConfig(N=n, M=m, p=32, arch=arch)
            assert execute_functional(problem, cfg, dataflow) == expected


def test_functional_reduction_ops_match_counts(worked_dims: GemmDims, rng):
    problem = _random_problem(rng, worked_dims)
    cfg = DpuConfig(N=2, M=2, arch=Architecture.MAW)
    result = run_functional(problem, cfg, Dataflow.IS)
    assert result.reduction_ops == result.schedule.counters.reduction_ops == 16
    assert result.capacitor_switches == 0


@pytest.mark.parametrize("mae_bits", [8, 12])
def test_functional_noise_reaches_the_output(rng: np.random.Generator, mae_bits):
    problem = _random_problem(rng, GemmDims(32, 32, 32))
    cfg = DpuConfig(N=4, M=4)
    noise = NoiseModel(mae_bits=mae_bits, seed=5)
    out = execute_functional(problem, cfg, Dataflow.OS, noise)

    mismatch = np.mean(out.data != gemm_exact(problem).data)
    # one readout per output; its full scale is K * 15 * 7 product units
    sigma = noise.sigma * 32 * 15 * 7
    assert mismatch == pytest.approx(2 * norm.sf(0.5 / sigma), abs=0.06)


def test_functional_noise_below_one_code_is_rounded_away(rng: np.random.Generator):
    problem = _random_problem(rng, GemmDims(32, 32, 32))
    noise = NoiseModel(mae_bits=16, seed=5)
    out = execute_functional(problem, DpuConfig(N=4, M=4), Dataflow.OS, noise)
    assert out == gemm_exact(problem)


def test_functional_noise_grows_with_fewer_bits(rng: np.random.Generator):
    problem = _random_problem(rng, GemmDims(16, 24, 16))
    exact = gemm_exact(problem).data
    errors = []
    for mae_bits in (4, 8, 12):
        for arch in (Architecture.HEANA, Architecture.AMW):
            cfg = DpuConfig(N=4, M=4, arch=arch)
            out = execute_functional(problem, cfg, Dataflow.IS, NoiseModel(mae_bits))
            errors.append(np.mean(np.abs(out.data - exact)))
    assert errors[0] > errors[2] > errors[4]
    assert errors[1] > errors[3] > errors[5]
