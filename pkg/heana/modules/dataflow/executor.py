# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Value-level execution of a schedule through the device models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from heana.enums import Dataflow
from heana.modules.dataflow.planner import plan_schedule
from heana.modules.dataflow.schema import DpuConfig, Schedule
from heana.modules.photonic import (
    CapacitorBank,
    NoiseModel,
    TAOMConfig,
    adc_readout,
    modulate_tile,
    select_capacitor,
    superpose_energies,
    tir_accumulate,
)
from heana.modules.tensor import ACCUMULATOR_BITS, GemmProblem, QuantMatrix


@dataclass
class FunctionalResult:
    """Output of a functional run and the events measured while running it."""

    output: QuantMatrix
    adc_readouts: int
    capacitor_switches: int
    reduction_ops: int
    schedule: Schedule


def _taom_config(problem: GemmProblem, cfg: DpuConfig) -> TAOMConfig:
    # unsigned weights need one extra bit so their full range fits the magnitude
    bits_w = problem.W.bits + (0 if problem.W.signed else 1)
    return TAOMConfig(
        bits_a=problem.I.bits, bits_w=max(bits_w, 2), datarate=cfg.datarate
    )


def run_functional(
    problem: GemmProblem,
    cfg: DpuConfig,
    dataflow: Dataflow,
    noise: Optional[NoiseModel] = None,
) -> FunctionalResult:
    """Execute ``problem`` frame by frame.

    With BPCA every DPE integrates its partial sums on the capacitor picked by
    the schedule and is read once at the tile's final frame. Without BPCA each
    frame is read out and the partial sums are added by the reduction network.
    Readout noise is relative to the largest charge a capacitor can hold:
    ``K`` full-scale products with BPCA, one frame's ``min(N, K)`` without.
    Noisy readouts are rounded to the nearest code.

    Raises:
        CapacityExceededError: If the schedule needs more than ``cfg.p``
            capacitors.
        OperandRangeError: If an operand does not fit the TAOM bit-widths.

    """
    schedule = plan_schedule(problem.dims, cfg, dataflow)
    taom = _taom_config(problem, cfg)
    inputs, weights = problem.I.data, problem.W.data
    out = np.zeros((problem.dims.C, problem.dims.D), dtype=np.int64)
    span = problem.dims.K if cfg.has_bpca else min(cfg.N, problem.dims.K)
    bank = CapacitorBank(
        p=cfg.p if cfg.has_bpca else 1,
        lanes=cfg.M,
        full_scale=span * taom.max_width_code * taom.max_amp_code,
    )
    drive = np.zeros(cfg.M, dtype=np.int64)
    reduction_ops = 0
    n_k = schedule.k_blocks

    for frame in schedule.frames:
        (r0, r1), (k0, k1), (c0, c1) = frame.rows, frame.k_range, frame.cols
        a_blk = inputs[r0:r1, k0:k1].T
        w_blk = weights[k0:k1, c0:c1]
        energies = modulate_tile(a_blk[:, :, None], w_blk[:, None, :], taom)
        lanes = frame.lanes
        drive[:] = 0
        drive[:lanes] = superpose_energies(energies.reshape(k1 - k0, lanes))

        if cfg.has_bpca:
            select_capacitor(bank, frame.capacitor or 1)
            tir_accumulate(bank, drive)
            if not frame.is_final_for_output:
                continue
            values = adc_readout(bank, noise, lanes=lanes)
            codes = np.rint(values).astype(np.int64)
            out[r0:r1, c0:c1] = codes.reshape(r1 - r0, c1 - c0)
            continue

        tir_accumulate(bank, drive)
        psums = np.rint(adc_readout(bank, noise, lanes=lanes)).astype(np.int64)
        out[r0:r1, c0:c1] += psums.reshape(r1 - r0, c1 - c0)
        if frame.is_final_for_output:
            reduction_ops += lanes * (n_k - 1)

    return FunctionalResult(
        output=QuantMatrix(out, ACCUMULATOR_BITS, signed=True),
        adc_readouts=bank.readouts,
        capacitor_switches=bank.switches,
        reduction_ops=reduction_ops,
        schedule=schedule,
    )


def execute_functional(
    problem: GemmProblem,
    cfg: DpuConfig,
    dataflow: Dataflow,
    noise: Optional[NoiseModel] = None,
) -> QuantMatrix:
    """Run ``problem`` through the device models and return ``O``."""
    return run_functional(problem, cfg, dataflow, noise).output
