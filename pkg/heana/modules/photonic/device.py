# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""TAOM pulse-width/amplitude modulation and balanced photodetection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
import numpy.typing as npt

from heana.errors import InvalidConfigError, OperandRangeError
from heana.modules.photonic.bpca import (
    CapacitorBank,
    NoiseModel,
    adc_readout,
    tir_accumulate,
)

# Slack for float round-off when checking the pulse against the symbol period.
_PERIOD_RTOL = 1e-12


@dataclass(frozen=True)
class PWAMSymbol:
    """One optical symbol: activation as pulse width, weight as amplitude."""

    width_code: int
    amp_code: int
    sign: int
    unit_width: float

    @property
    def energy(self) -> int:
        """Signed energy in product units."""
        return self.sign * self.width_code * self.amp_code

    @property
    def duration_ps(self) -> float:
        """Pulse width in picoseconds."""
        return self.width_code * self.unit_width


@dataclass
class TAOMConfig:
    """TAOM operating point.

    ``unit_width`` is picoseconds per activation unit; left unset it takes the
    widest slot that still fits a full-scale pulse into one symbol period.
    Weight magnitudes use ``bits_w - 1`` bits, the sign rides on the
    threshold level.
    """

    bits_a: int = 4
    bits_w: int = 4
    datarate: float = 1e9
    unit_width: Optional[float] = None
    optical_power_dbm: float = 0.0
    noise: Optional[NoiseModel] = None

    def __post_init__(self) -> None:
        """Derive and check the slot width."""
        if self.bits_a < 1 or self.bits_w < 2:
            raise InvalidConfigError(
                f"need bits_a >= 1 and bits_w >= 2, got {self.bits_a}, {self.bits_w}"
            )
        if self.datarate <= 0:
            raise InvalidConfigError(f"datarate must be > 0, got {self.datarate}")
        if self.unit_width is None:
            self.unit_width = self.period_ps / self.max_width_code
        if self.unit_width <= 0:
            raise InvalidConfigError(f"unit_width must be > 0, got {self.unit_width}")
        if self.max_width_code * self.unit_width > self.period_ps * (1 + _PERIOD_RTOL):
            raise InvalidConfigError(
                f"{self.max_width_code} slots of {self.unit_width:g} ps exceed the "
                f"{self.period_ps:g} ps symbol period"
            )

    @property
    def period_ps(self) -> float:
        """Symbol period."""
        return 1e12 / self.datarate

    @property
    def max_width_code(self) -> int:
        """Largest activation code."""
        return (1 << self.bits_a) - 1

    @property
    def max_amp_code(self) -> int:
        """Largest weight magnitude."""
        return (1 << (self.bits_w - 1)) - 1


def _check_operands(
    a: Union[int, npt.NDArray[np.int64]],
    w: Union[int, npt.NDArray[np.int64]],
    cfg: TAOMConfig,
) -> None:
    a_arr, w_arr = np.asarray(a), np.asarray(w)
    if a_arr.size and (a_arr.min() < 0 or a_arr.max() > cfg.max_width_code):
        bad = int(a_arr.min()) if a_arr.min() < 0 else int(a_arr.max())
        raise OperandRangeError("a", bad, 0, cfg.max_width_code)
    if w_arr.size and np.abs(w_arr).max() > cfg.max_amp_code:
        bad = int(w_arr.flat[int(np.argmax(np.abs(w_arr)))])
        raise OperandRangeError("w", bad, -cfg.max_amp_code, cfg.max_amp_code)


def taom_modulate(a: int, w: int, cfg: TAOMConfig) -> PWAMSymbol:
    """Encode ``a`` as pulse width and ``|w|`` as amplitude."""
    _check_operands(a, w, cfg)
    return PWAMSymbol(
        width_code=int(a),
        amp_code=abs(int(w)),
        sign=-1 if w < 0 else 1,
        unit_width=float(cfg.unit_width or 0.0),
    )


def modulate_tile(
    a: npt.NDArray[np.int64], w: npt.NDArray[np.int64], cfg: TAOMConfig
) -> npt.NDArray[np.int64]:
    """Signed symbol energies for broadcast-compatible operand blocks."""
    _check_operands(a, w, cfg)
    return np.asarray(a, dtype=np.int64) * np.asarray(w, dtype=np.int64)


def bpd_superpose(
    symbols: Sequence[PWAMSymbol], max_channels: Optional[int] = None
) -> int:
    """Balanced detection of one cycle: the signed sum of symbol energies."""
    if max_channels is not None and len(symbols) > max_channels:
        raise InvalidConfigError(
            f"{len(symbols)} symbols exceed {max_channels} wavelength channels"
        )
    return sum(symbol.energy for symbol in symbols)


def superpose_energies(energies: npt.NDArray[np.int64]) -> npt.NDArray[np.int64]:
    """Per-DPE cycle sums of a ``(wavelengths, lanes)`` energy block."""
    return np.asarray(energies, dtype=np.int64).sum(axis=0)


def multiplier_mode_step(a: int, w: int, cfg: TAOMConfig) -> Union[int, float]:
    """One product through a single-capacitor TIR sampled every symbol."""
    symbol = taom_modulate(a, w, cfg)
    bank = CapacitorBank(p=1, full_scale=cfg.max_width_code * cfg.max_amp_code)
    tir_accumulate(bank, bpd_superpose([symbol]))
    value = adc_readout(bank, cfg.noise)[0]
    return int(value) if cfg.noise is None else float(value)
