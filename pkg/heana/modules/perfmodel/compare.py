# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Baseline-normalized comparisons across reports."""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Sequence

from scipy.stats import gmean

from heana.errors import MissingBaselineError
from heana.schema.report import ComparisonRow, ComparisonTable, SimReport


def compare(reports: Sequence[SimReport], baseline: str) -> ComparisonTable:
    """Normalize ``reports`` to the ``baseline`` configuration, per model.

    ``baseline`` is a configuration id such as ``AMW-OS@1GS/s``. Each model's
    metrics are divided by the baseline's metrics for that same model, and
    every configuration gets a geometric mean over models.

    Raises:
        MissingBaselineError: If some model has no report under ``baseline``.

    """
    base: Dict[str, SimReport] = {
        report.model: report for report in reports if report.config_id == baseline
    }
    missing = sorted({r.model for r in reports} - set(base))
    if not base or missing:
        raise MissingBaselineError(
            f"{baseline} (missing for {', '.join(missing) or 'all models'})"
        )

    rows: List[ComparisonRow] = []
    by_config: Dict[str, List[ComparisonRow]] = defaultdict(list)
    for report in reports:
        ref = base[report.model]
        row = ComparisonRow(
            run_id=report.run_id,
            model=report.model,
            config=report.config_id,
            fps=report.fps / ref.fps,
            fps_per_watt=report.fps_per_watt / ref.fps_per_watt,
            latency_s=report.latency_s / ref.latency_s,
            energy_j=report.energy_j / ref.energy_j,
        )
        rows.append(row)
        by_config[row.config].append(row)

    means = [
        ComparisonRow(
            run_id=f"gmean/{config}",
            model="gmean",
            config=config,
            fps=float(gmean([r.fps for r in group])),
            fps_per_watt=float(gmean([r.fps_per_watt for r in group])),
            latency_s=float(gmean([r.latency_s for r in group])),
            energy_j=float(gmean([r.energy_j for r in group])),
        )
        for config, group in by_config.items()
    ]
    return ComparisonTable(baseline=baseline, rows=rows, gmean=means)
