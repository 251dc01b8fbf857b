# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Command implementations behind the CLI."""

from __future__ import annotations

import itertools
import json
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np
from pydantic import ValidationError

from heana.di.injector import get_settings
from heana.enums import Architecture, Dataflow
from heana.errors import (
    CapacityExceededError,
    ConfigParseError,
    FunctionalMismatchError,
)
from heana.logging import logger
from heana.modules.dataflow import (
    DpuConfig,
    check_capacity,
    dump_trace,
    execute_functional,
    plan_schedule,
    profile_schedule,
)
from heana.modules.frontend.config import (
    RunConfig,
    build_accelerator,
    build_dpu,
    load_params,
    load_peripherals,
)
from heana.modules.frontend.manifest import lower_manifest
from heana.modules.linkbudget import ScalePoint, scale_grid
from heana.modules.linkbudget.sweep import DEFAULT_ARCHS, DEFAULT_BITS
from heana.modules.perfmodel import LayerPlan, compare, evaluate
from heana.modules.tensor import GemmDims, GemmProblem, QuantMatrix, gemm_exact
from heana.schema.config import LinkBudgetParams, PeripheralModel
from heana.schema.report import ComparisonTable, SimReport
from heana.schema.workload import WorkloadManifest
from heana.utils.compat import model_dump, model_copy, model_parse
from heana.utils.format import datarate_label
from heana.utils.parallel import map_ordered
from heana.utils.validate import SUPPORTED_DATARATES_GSPS

# rows of I sampled per layer by the functional check; capacity is still
# checked against the full layer
FUNCTIONAL_ROW_CAP = 4


def scale_rows(points: Iterable[ScalePoint]) -> List[Dict[str, Any]]:
    """Flatten scale points into CSV-ready records."""
    return [
        {
            "arch": point.arch.label,
            "B": point.B,
            "DR": datarate_label(point.DR),
            "N_max": point.N_max,
        }
        for point in points
    ]


def run_scale(
    params: Optional[LinkBudgetParams] = None,
    bits: Sequence[int] = DEFAULT_BITS,
    datarates_gsps: Sequence[float] = SUPPORTED_DATARATES_GSPS,
    archs: Sequence[Architecture] = DEFAULT_ARCHS,
    threads: int = 0,
) -> List[ScalePoint]:
    """Largest supported DPU size over precision, datarate and architecture."""
    return scale_grid(
        params or load_params(),
        bits=bits,
        datarates=[gsps * 1e9 for gsps in datarates_gsps],
        archs=archs,
        threads=threads,
    )


@dataclass
class PlanRow:
    """Schedule summary of one layer."""

    layer: str
    dims: Optional[GemmDims]
    groups: int
    counts: Dict[str, int]

    def as_dict(self) -> Dict[str, Any]:
        """CSV-ready record."""
        dims = self.dims
        return {
            "layer": self.layer,
            "C": dims.C if dims else "-",
            "K": dims.K if dims else "-",
            "D": dims.D if dims else "-",
            "groups": self.groups,
            **self.counts,
        }


def run_plan(
    run: RunConfig,
    dims: Optional[GemmDims] = None,
    manifest: Optional[WorkloadManifest] = None,
    trace: Optional[TextIO] = None,
    params: Optional[LinkBudgetParams] = None,
) -> List[PlanRow]:
    """Plan one GEMM, or every GEMM layer of ``manifest``, without values.

    A single GEMM is planned frame by frame and can be traced; manifest layers
    use the closed-form profile.
    """
    dpu = build_dpu(run, params or load_params(run.params_path))
    if dims is not None:
        schedule = plan_schedule(dims, dpu, run.dataflow)
        if trace is not None:
            dump_trace(schedule, trace)
        return [PlanRow(str(dims), dims, 1, schedule.counters.as_dict())]

    if manifest is None:
        raise ValueError("either dims or manifest is required")
    rows = []
    for layer in lower_manifest(manifest):
        if layer.dims is None:
            continue
        profile = profile_schedule(layer.dims, dpu, run.dataflow)
        counts = profile.counts().scaled(layer.groups)
        rows.append(PlanRow(layer.name, layer.dims, layer.groups, counts.as_dict()))
    return rows


def _check_layer(
    layer: LayerPlan, dpu: DpuConfig, dataflow: Dataflow, bits: int, seed: int
) -> int:
    assert layer.dims is not None
    try:
        check_capacity(layer.dims, dpu, dataflow)
    except CapacityExceededError as exc:
        raise exc.for_layer(layer.name) from exc
    rng = np.random.default_rng([seed, zlib.crc32(layer.name.encode())])
    rows = min(layer.dims.C, FUNCTIONAL_ROW_CAP)
    problem = GemmProblem(
        QuantMatrix.random(rng, rows, layer.dims.K, bits, signed=False),
        QuantMatrix.random(rng, layer.dims.K, layer.dims.D, bits, signed=True),
    )
    got = execute_functional(problem, dpu, dataflow)
    return int(np.count_nonzero(got.data != gemm_exact(problem).data))


def check_functional(
    layers: Sequence[LayerPlan],
    dpu: DpuConfig,
    dataflow: Dataflow,
    bits: int,
    seed: int,
    threads: int = 0,
) -> None:
    """Run every GEMM layer on seeded random operands against the exact GEMM.

    Each layer is checked on at most ``FUNCTIONAL_ROW_CAP`` rows of ``I``. The
    capacitor bank is sized against the full layer first, so a WS or IS layer
    that does not fit fails here as it would in ``evaluate``.

    Raises:
        CapacityExceededError: If a layer needs more capacitors than ``p``.
        FunctionalMismatchError: Naming the first layer that disagrees.

    """
    gemms = [layer for layer in layers if layer.dims is not None]
    mismatches = map_ordered(
        lambda layer: _check_layer(layer, dpu, dataflow, bits, seed),
        gemms,
        threads,
        progress=get_settings().show_progress,
        desc="functional",
    )
    for layer, bad in zip(gemms, mismatches):
        if bad:
            raise FunctionalMismatchError(layer.name, bad)
    logger.info("Functional check passed on %d layers", len(gemms))


def run_simulate(
    manifest: WorkloadManifest,
    run: RunConfig,
    threads: int = 0,
    functional: bool = False,
    params: Optional[LinkBudgetParams] = None,
    peripherals: Optional[PeripheralModel] = None,
) -> SimReport:
    """Evaluate ``manifest`` on the accelerator described by ``run``."""
    acc = build_accelerator(run, params, peripherals)
    layers = lower_manifest(manifest)
    if functional:
        check_functional(layers, acc.dpu, run.dataflow, run.bits, run.seed, threads)
    return evaluate(
        layers,
        acc,
        batch=run.batch or manifest.batch,
        dataflow=run.dataflow,
        model=manifest.name,
        bits=run.bits,
        threads=threads,
    )


def run_sweep(
    manifest: WorkloadManifest,
    base: RunConfig,
    archs: Sequence[Architecture] = tuple(Architecture),
    dataflows: Sequence[Dataflow] = tuple(Dataflow),
    datarates_gsps: Sequence[float] = SUPPORTED_DATARATES_GSPS,
    threads: int = 0,
) -> List[SimReport]:
    """Simulate every (arch, dataflow, datarate) combination, in that order."""
    params = load_params(base.params_path)
    peripherals = load_peripherals(base.peripherals_path)
    runs = [
        model_copy(base, {"arch": arch, "dataflow": dataflow, "datarate_gsps": gsps})
        for arch, dataflow, gsps in itertools.product(
            archs, dataflows, datarates_gsps
        )
    ]
    return map_ordered(
        lambda run: run_simulate(
            manifest, run, params=params, peripherals=peripherals
        ),
        runs,
        threads,
        progress=get_settings().show_progress,
        desc=f"sweep {manifest.name}",
    )


def load_reports(path: Path) -> List[SimReport]:
    """Read one report, or a list of reports, from a JSON file."""
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigParseError(str(path), exc.strerror or str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigParseError(str(path), f"line {exc.lineno}: {exc.msg}") from exc
    items = data if isinstance(data, list) else [data]
    try:
        return [model_parse(SimReport, item) for item in items]
    except ValidationError as exc:
        raise ConfigParseError(str(path), "not a simulation report") from exc


def run_compare(paths: Sequence[Path], baseline: str) -> ComparisonTable:
    """Normalize saved reports against ``baseline``."""
    reports = [report for path in paths for report in load_reports(path)]
    return compare(reports, baseline)


def report_rows(reports: Iterable[SimReport]) -> List[Dict[str, Any]]:
    """Summary records of reports, without per-layer detail."""
    rows = []
    for report in reports:
        data = model_dump(report)
        for key in ("energy_breakdown", "counts", "layers"):
            data.pop(key)
        data["violations"] = len(report.violations)
        rows.append(data)
    return rows
