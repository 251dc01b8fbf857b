# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

# pylint: disable=too-many-arguments, too-many-locals, redefined-builtin

"""HEANA-Sim CLI."""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional

import typer

from heana.cli.output import emit
from heana.di.injector import get_settings
from heana.enums import Architecture, Dataflow, OutputFormat
from heana.errors import InvalidConfigError
from heana.modules.dataflow import DEFAULT_CAPACITORS
from heana.modules.frontend import (
    FUNCTIONAL_ROW_CAP,
    RunConfig,
    load_params,
    parse_manifest,
    report_rows,
    run_compare,
    run_plan,
    run_scale,
    run_simulate,
    run_sweep,
    scale_rows,
)
from heana.modules.linkbudget.sweep import DEFAULT_ARCHS, DEFAULT_BITS
from heana.modules.tensor import GemmDims
from heana.utils.compat import model_dump
from heana.utils.decorator import check_sim_errors
from heana.utils.validate import SUPPORTED_DATARATES_GSPS, parse_dims
from heana.utils.version import get_installed_version

app = typer.Typer(
    help="Photonic GEMM accelerator simulator.",
    no_args_is_help=True,
    context_settings={"help_option_names": ["-h", "--help"]},
    add_completion=True,
    pretty_exceptions_enable=False,
)

SCALE_FIELDS = ["arch", "B", "DR", "N_max"]
REPORT_FIELDS = [
    "run_id",
    "model",
    "arch",
    "dataflow",
    "datarate",
    "bits",
    "N",
    "M",
    "dpu_count",
    "batch",
    "latency_s",
    "energy_j",
    "fps",
    "fps_per_watt",
    "violations",
]
COMPARE_FIELDS = ["model", "config", "fps", "fps_per_watt", "latency_s", "energy_j"]
PLAN_FIELDS = [
    "layer",
    "C",
    "K",
    "D",
    "groups",
    "frames",
    "adc_conversions",
    "dac_conversions",
    "input_reads",
    "weight_reads",
    "output_writes",
    "psum_reads",
    "psum_writes",
    "capacitor_switches",
    "reduction_ops",
]

_ARCH = typer.Option(Architecture.HEANA, "--arch", help="DPU architecture.")
_DATAFLOW = typer.Option(Dataflow.OS, "--dataflow", help="Loop-order dataflow.")
_DATARATE = typer.Option(1.0, "--datarate", help="Symbol rate in GS/s (1, 5 or 10).")
_PARAMS = typer.Option(
    None, "--params", help="YAML overriding the packaged link-budget constants."
)
_PERIPHERALS = typer.Option(
    None, "--peripherals", help="YAML overriding the packaged peripheral costs."
)
_FORMAT = typer.Option(OutputFormat.CSV, "--format", help="Output format.")
_OUT = typer.Option(None, "--out", help="Write output here instead of stdout.")
_N = typer.Option(None, "--n", min=1, help="Wavelengths per DPE (default: N_max).")
_M = typer.Option(None, "--m", min=1, help="DPEs per DPU (default: N).")
_P = typer.Option(DEFAULT_CAPACITORS, "--p", min=1, help="BPCA capacitors per DPE.")


@app.command()
@check_sim_errors
def scale(
    arch: Optional[List[Architecture]] = typer.Option(
        None, "--arch", help="Architectures to sweep (repeatable)."
    ),
    bits: Optional[List[int]] = typer.Option(
        None, "--bits", min=1, help="Precisions to sweep (repeatable, default 1-8)."
    ),
    datarate: Optional[List[float]] = typer.Option(
        None, "--datarate", help="Datarates in GS/s (repeatable)."
    ),
    params: Optional[Path] = _PARAMS,
    format: OutputFormat = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Largest supported DPU size N (=M) per precision and datarate."""
    points = run_scale(
        load_params(params),
        bits=bits or DEFAULT_BITS,
        datarates_gsps=datarate or SUPPORTED_DATARATES_GSPS,
        archs=arch or DEFAULT_ARCHS,
        threads=get_settings().threads,
    )
    emit("DPU scalability", scale_rows(points), SCALE_FIELDS, format, out)


@app.command()
@check_sim_errors
def plan(
    dims: Optional[str] = typer.Option(
        None, "--dims", help="Single GEMM as 'C,K,D' (overrides --workload)."
    ),
    workload: Optional[str] = typer.Option(
        None, "--workload", help="Manifest path or packaged workload name."
    ),
    arch: Architecture = _ARCH,
    dataflow: Dataflow = _DATAFLOW,
    datarate: float = _DATARATE,
    bits: int = typer.Option(4, "--bits", min=1, max=16, help="Operand precision."),
    n: Optional[int] = _N,
    m: Optional[int] = _M,
    p: int = _P,
    params: Optional[Path] = _PARAMS,
    trace: Optional[Path] = typer.Option(
        None, "--trace", help="Dump the frame trace of a --dims schedule here."
    ),
    format: OutputFormat = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Plan schedules and count events without executing values."""
    run = RunConfig(
        arch=arch,
        dataflow=dataflow,
        datarate_gsps=datarate,
        bits=bits,
        n=n,
        m=m,
        p=p,
        params_path=params,
    )
    if dims is not None:
        gemm = GemmDims(*parse_dims(dims))
        if trace is not None:
            trace.parent.mkdir(parents=True, exist_ok=True)
            with trace.open("w", encoding="utf-8") as stream:
                rows = run_plan(run, dims=gemm, trace=stream)
        else:
            rows = run_plan(run, dims=gemm)
    elif workload is not None:
        if trace is not None:
            raise InvalidConfigError("--trace needs --dims")
        rows = run_plan(run, manifest=parse_manifest(workload))
    else:
        raise InvalidConfigError("one of --dims and --workload is required")
    emit("Schedule", [row.as_dict() for row in rows], PLAN_FIELDS, format, out)


@app.command()
@check_sim_errors
def simulate(
    workload: str = typer.Option(
        ..., "--workload", help="Manifest path or packaged workload name."
    ),
    arch: Architecture = _ARCH,
    dataflow: Dataflow = _DATAFLOW,
    datarate: float = _DATARATE,
    bits: Optional[int] = typer.Option(
        None, "--bits", min=1, max=16, help="Operand precision (default: manifest)."
    ),
    batch: Optional[int] = typer.Option(
        None, "--batch", min=1, help="Images per run (default: manifest)."
    ),
    n: Optional[int] = _N,
    m: Optional[int] = _M,
    p: int = _P,
    dpu_count: Optional[int] = typer.Option(
        None, "--dpu-count", min=1, help="DPUs in the mesh (default: area-matched)."
    ),
    params: Optional[Path] = _PARAMS,
    peripherals: Optional[Path] = _PERIPHERALS,
    seed: int = typer.Option(0, "--seed", help="Seed of the functional operands."),
    check_functional: bool = typer.Option(
        False,
        "--check-functional",
        help=(
            "Also run every GEMM layer on random operands against the exact GEMM. "
            f"Only the first {FUNCTIONAL_ROW_CAP} rows of each layer are run; "
            "capacitor capacity is checked on the full layer."
        ),
    ),
    format: OutputFormat = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Evaluate latency, energy, FPS and FPS/W of a workload."""
    manifest = parse_manifest(workload)
    run = RunConfig(
        arch=arch,
        dataflow=dataflow,
        datarate_gsps=datarate,
        bits=bits or manifest.bits,
        batch=batch,
        n=n,
        m=m,
        p=p,
        dpu_count=dpu_count,
        params_path=params,
        peripherals_path=peripherals,
        seed=seed,
    )
    report = run_simulate(
        manifest, run, threads=get_settings().threads, functional=check_functional
    )
    emit(
        report.run_id,
        report_rows([report]),
        REPORT_FIELDS,
        format,
        out,
        payload=model_dump(report),
        panel=True,
    )


@app.command()
@check_sim_errors
def sweep(
    workload: str = typer.Option(
        ..., "--workload", help="Manifest path or packaged workload name."
    ),
    arch: Optional[List[Architecture]] = typer.Option(
        None, "--arch", help="Architectures (repeatable, default all)."
    ),
    dataflow: Optional[List[Dataflow]] = typer.Option(
        None, "--dataflow", help="Dataflows (repeatable, default all)."
    ),
    datarate: Optional[List[float]] = typer.Option(
        None, "--datarate", help="Datarates in GS/s (repeatable, default all)."
    ),
    batch: Optional[int] = typer.Option(None, "--batch", min=1, help="Images per run."),
    params: Optional[Path] = _PARAMS,
    peripherals: Optional[Path] = _PERIPHERALS,
    format: OutputFormat = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Simulate a workload over architectures, dataflows and datarates."""
    manifest = parse_manifest(workload)
    base = RunConfig(
        bits=manifest.bits,
        batch=batch,
        params_path=params,
        peripherals_path=peripherals,
    )
    reports = run_sweep(
        manifest,
        base,
        archs=arch or list(Architecture),
        dataflows=dataflow or list(Dataflow),
        datarates_gsps=datarate or SUPPORTED_DATARATES_GSPS,
        threads=get_settings().threads,
    )
    emit(
        f"Sweep of {manifest.name}",
        report_rows(reports),
        REPORT_FIELDS,
        format,
        out,
        payload=[model_dump(report) for report in reports],
    )


@app.command("compare")
@check_sim_errors
def compare_reports(
    reports: List[Path] = typer.Argument(..., help="JSON reports from simulate/sweep."),
    baseline: str = typer.Option(
        ..., "--baseline", help="Baseline configuration, e.g. 'AMW-WS@1GS/s'."
    ),
    format: OutputFormat = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Normalize reports against a baseline configuration."""
    table = run_compare(reports, baseline)
    rows = [model_dump(row) for row in table.rows + table.gmean]
    emit(
        f"Normalized to {baseline}",
        rows,
        COMPARE_FIELDS,
        format,
        out,
        payload=model_dump(table),
    )


@app.command()
def version():
    """Check the installed package version."""
    installed_version = get_installed_version()
    typer.echo(installed_version)
