# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Workload manifests, run configuration and command implementations."""

from __future__ import annotations

from heana.modules.frontend.commands import (
    FUNCTIONAL_ROW_CAP,
    PlanRow,
    check_functional,
    load_reports,
    report_rows,
    run_compare,
    run_plan,
    run_scale,
    run_simulate,
    run_sweep,
    scale_rows,
)
from heana.modules.frontend.config import (
    RunConfig,
    build_accelerator,
    build_dpu,
    load_params,
    load_peripherals,
    reference_accelerator,
)
from heana.modules.frontend.manifest import (
    load_manifest,
    lower_layer,
    lower_manifest,
    parse_manifest,
    resolve_workload,
    serialize_manifest,
    shipped_workloads,
    validate_manifest,
)

__all__ = [
    "FUNCTIONAL_ROW_CAP",
    "PlanRow",
    "RunConfig",
    "build_accelerator",
    "build_dpu",
    "check_functional",
    "load_manifest",
    "load_params",
    "load_peripherals",
    "load_reports",
    "lower_layer",
    "lower_manifest",
    "parse_manifest",
    "reference_accelerator",
    "report_rows",
    "resolve_workload",
    "run_compare",
    "run_plan",
    "run_scale",
    "run_simulate",
    "run_sweep",
    "scale_rows",
    "serialize_manifest",
    "shipped_workloads",
    "validate_manifest",
]
