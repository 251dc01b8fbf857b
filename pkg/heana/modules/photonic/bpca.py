# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Balanced photo-charge accumulator: capacitor bank, TIR and ADC readout.

Voltages are kept in product units (one unit is the charge of a 1x1 product),
so the noiseless chain is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import numpy.typing as npt

from heana.errors import CapacitorIndexError, InvalidConfigError


@dataclass
class NoiseModel:
    """Lumped readout noise with a configured mean absolute error.

    Errors are Gaussian with sigma chosen so that ``E|error| / full_scale``
    equals ``2 ** -mae_bits``.
    """

    mae_bits: float
    seed: int = 0
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Seed the generator."""
        if self.mae_bits <= 0:
            raise InvalidConfigError(f"mae_bits must be > 0, got {self.mae_bits}")
        self.rng = np.random.default_rng(self.seed)

    @property
    def sigma(self) -> float:
        """Standard deviation relative to full scale."""
        return 2.0**-self.mae_bits * math.sqrt(math.pi / 2.0)

    def perturb(
        self, values: npt.NDArray[np.int64], full_scale: float = 1.0
    ) -> npt.NDArray[np.float64]:
        """Add one noise draw per value."""
        noise = self.rng.normal(0.0, self.sigma * full_scale, size=values.shape)
        return values.astype(np.float64) + noise


@dataclass
class CapacitorBank:
    """The ``p`` capacitors behind the TIR of one DPE, or of ``lanes`` DPEs.

    All lanes share the active index: the DPEs of a DPU select capacitors in
    lock-step. Non-active capacitors only change through ``select`` and
    readout of the active one. ``full_scale`` is the largest charge a readout
    can see, in product units; readout noise is relative to it.
    """

    p: int
    lanes: int = 1
    sample_ratio: float = 1.0
    full_scale: float = 1.0
    voltages: npt.NDArray[np.int64] = field(init=False, repr=False)
    active: int = field(default=1, init=False)
    readouts: int = field(default=0, init=False)
    switches: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        """Allocate discharged capacitors."""
        if self.p < 1 or self.lanes < 1:
            raise InvalidConfigError(
                f"bank needs p >= 1 and lanes >= 1, got p={self.p}, lanes={self.lanes}"
            )
        if self.sample_ratio <= 0:
            raise InvalidConfigError(
                f"sample_ratio must be > 0, got {self.sample_ratio}"
            )
        if self.full_scale <= 0:
            raise InvalidConfigError(f"full_scale must be > 0, got {self.full_scale}")
        self.voltages = np.zeros((self.lanes, self.p), dtype=np.int64)

    def voltage(self, index: Optional[int] = None, lane: int = 0) -> int:
        """Charge on capacitor ``index`` (default: active) of ``lane``.

        Raises:
            CapacitorIndexError: If ``index`` is outside ``[1, p]``.

        """
        index = self.active if index is None else index
        if not 1 <= index <= self.p:
            raise CapacitorIndexError(index, self.p)
        return int(self.voltages[lane, index - 1])


def tir_accumulate(
    bank: CapacitorBank, cycle_sum: Union[int, npt.NDArray[np.int64]]
) -> CapacitorBank:
    """Integrate one cycle's balanced photocurrent onto the active capacitor."""
    bank.voltages[:, bank.active - 1] += cycle_sum
    return bank


def select_capacitor(bank: CapacitorBank, index: int) -> CapacitorBank:
    """Route subsequent integration to capacitor ``index`` (1-based)."""
    if not 1 <= index <= bank.p:
        raise CapacitorIndexError(index, bank.p)
    if index != bank.active:
        bank.switches += 1
        bank.active = index
    return bank


def adc_readout(
    bank: CapacitorBank,
    noise: Optional[NoiseModel] = None,
    lanes: Optional[int] = None,
) -> npt.NDArray[Union[np.int64, np.float64]]:
    """Sample and reset the active capacitor of the first ``lanes`` lanes.

    Returns one value per lane read. Each lane read counts as one ADC
    conversion. Noise is scaled by the bank's ``full_scale``.

    Raises:
        InvalidConfigError: If ``lanes`` is outside ``[1, bank.lanes]``.

    """
    count = bank.lanes if lanes is None else lanes
    if not 1 <= count <= bank.lanes:
        raise InvalidConfigError(
            f"cannot read {count} lanes from a bank of {bank.lanes}"
        )
    column = bank.active - 1
    values = bank.voltages[:count, column].copy()
    bank.voltages[:count, column] = 0
    bank.readouts += count
    if noise is None:
        return values
    return noise.perturb(values, bank.full_scale)
