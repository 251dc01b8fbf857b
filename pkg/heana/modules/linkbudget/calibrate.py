# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Fit of the unpublished loss constants against the published DPU sizes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Mapping, Sequence

import numpy as np

from heana.enums import Architecture
from heana.errors import InvalidConfigError
from heana.logging import logger
from heana.modules.linkbudget.equations import max_n
from heana.schema.config import LinkBudgetParams
from heana.utils.compat import model_copy

DEFAULT_ANCHORS: Dict[Architecture, int] = {
    Architecture.HEANA: 83,
    Architecture.AMW: 36,
    Architecture.MAW: 43,
}
DEFAULT_D_MRR_GRID = tuple(np.round(np.linspace(0.0, 0.05, 11), 6))
DEFAULT_SMF_GRID = tuple(np.round(np.linspace(0.0, 1.0, 11), 6))


@dataclass(frozen=True)
class CalibrationResult:
    """Chosen constants and the sizes they produce."""

    d_MRR: float
    P_SMF_att: float
    n_max: Dict[Architecture, int]
    error: float

    def apply(self, params: LinkBudgetParams) -> LinkBudgetParams:
        """Copy ``params`` with the fitted constants."""
        return model_copy(params, {"d_MRR": self.d_MRR, "P_SMF_att": self.P_SMF_att})


def calibrate(
    params: LinkBudgetParams,
    anchors: Mapping[Architecture, int] = DEFAULT_ANCHORS,
    bits: int = 4,
    datarate: float = 1e9,
    d_grid: Sequence[float] = DEFAULT_D_MRR_GRID,
    smf_grid: Sequence[float] = DEFAULT_SMF_GRID,
) -> CalibrationResult:
    """Grid-search ``(d_MRR, P_SMF_att)`` minimizing summed relative error.

    Ties keep the earliest grid point.
    """
    if not len(d_grid) or not len(smf_grid):
        raise InvalidConfigError("calibration grids must not be empty")
    trials = []
    for d_mrr, smf in itertools.product(d_grid, smf_grid):
        trial = model_copy(params, {"d_MRR": float(d_mrr), "P_SMF_att": float(smf)})
        sizes = {
            arch: max_n(bits, datarate, trial, arch).N_max for arch in anchors
        }
        error = sum(abs(sizes[arch] - n) / n for arch, n in anchors.items())
        trials.append(CalibrationResult(float(d_mrr), float(smf), sizes, error))
    best = min(trials, key=lambda result: result.error)
    logger.info(
        "Calibrated d_MRR=%g mm, P_SMF_att=%g dB (relative error %.4f)",
        best.d_MRR,
        best.P_SMF_att,
        best.error,
    )
    return best
