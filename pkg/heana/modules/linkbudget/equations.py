# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Detector sensitivity and optical power chain of a DPU."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy.constants import Boltzmann, elementary_charge
from scipy.optimize import bisect

from heana.enums import ArchFamily, Architecture
from heana.errors import NoSolutionError
from heana.logging import logger
from heana.schema.config import LinkBudgetParams

POWER_CEILING_W = 10.0
POWER_FLOOR_W = 1e-15
BISECT_RTOL = 1e-9
MAX_N_LIMIT = 5000


@dataclass(frozen=True)
class ScalePoint:
    """Largest supported DPU size at one operating point."""

    B: int
    DR: float
    arch: Architecture
    N_max: int


def dbm_to_watts(dbm: float) -> float:
    """Convert dBm to watts."""
    return 10.0 ** (dbm / 10.0) * 1e-3


def watts_to_dbm(watts: float) -> float:
    """Convert watts to dBm."""
    return 10.0 * math.log10(watts * 1e3)


def noise_bandwidth(datarate: float) -> float:
    """Receiver noise bandwidth, ``DR / sqrt(2)``."""
    return datarate / math.sqrt(2.0)


def noise_beta(
    power: float, params: LinkBudgetParams, datarate: Optional[float] = None
) -> float:
    """Receiver noise of a photodetector receiving ``power`` watts.

    Without ``datarate`` returns the noise spectral density in A/sqrt(Hz);
    with it, the noise current integrated over the receiver bandwidth.
    """
    q, k = elementary_charge, Boltzmann
    rin = 10.0 ** (params.RIN / 10.0)
    thermal = 4.0 * k * params.T / params.R_L
    signal = params.R * power
    beta = math.sqrt(
        2.0 * q * (signal + params.I_d) + thermal + signal**2 * rin
    ) + math.sqrt(2.0 * q * params.I_d + thermal)
    if datarate is None:
        return beta
    return beta * math.sqrt(noise_bandwidth(datarate))


def snr_bits(power: float, params: LinkBudgetParams, datarate: float) -> float:
    """Effective bits resolved at ``power`` watts on the detector."""
    if power <= 0:
        return -math.inf
    snr = params.R * power / noise_beta(power, params, datarate)
    return (20.0 * math.log10(snr) - 1.76) / 6.02


def required_power(
    bits: float,
    datarate: float,
    params: LinkBudgetParams,
    ceiling_w: float = POWER_CEILING_W,
) -> float:
    """Smallest detector power (W) resolving ``bits`` at ``datarate``.

    Raises:
        NoSolutionError: If ``bits`` is not reached below ``ceiling_w``.

    """
    def shortfall(power: float) -> float:
        return snr_bits(power, params, datarate) - bits

    if shortfall(ceiling_w) < 0:
        raise NoSolutionError(bits, datarate, ceiling_w)
    power = bisect(
        shortfall, POWER_FLOOR_W, ceiling_w, xtol=1e-30, rtol=BISECT_RTOL, maxiter=400
    )
    logger.debug("P_PD_opt(%s bits, %g S/s) = %.6g W", bits, datarate, power)
    return float(power)


def output_power(
    n: int, m: int, params: LinkBudgetParams, arch: Architecture
) -> float:
    """Optical power (dBm) reaching each detector of an ``n x m`` DPU.

    HEANA's weighting happens in the TAOM, so its ring terms are those of the
    mono-wavelength filters; AMW/MAW pay for their MRR weight banks.
    """
    if arch.family is ArchFamily.HEANA:
        ring_il, ring_obl = params.P_MRR_IL, params.P_MRM_OBL
    else:
        ring_il, ring_obl = params.P_MRR_IL, params.P_MRR_W_OBL
    return (
        params.P_Laser
        - params.P_SMF_att
        - params.P_EC_IL
        - params.P_Si_att * n * params.d_MRR
        - params.P_MRM_IL
        - (n - 1) * params.P_MRM_OBL
        - params.P_splitter_IL * math.log2(m)
        - ring_il
        - (n - 1) * ring_obl
        - params.penalty_for(arch)
        - 10.0 * math.log10(n)
    )


def max_n(
    bits: int,
    datarate: float,
    params: LinkBudgetParams,
    arch: Architecture,
    limit: int = MAX_N_LIMIT,
    ceiling_w: float = POWER_CEILING_W,
) -> ScalePoint:
    """Largest square DPU (``M = N``) whose detectors still get enough power."""
    try:
        threshold = watts_to_dbm(required_power(bits, datarate, params, ceiling_w))
    except NoSolutionError:
        return ScalePoint(bits, datarate, arch, 0)

    n = 0
    while n < limit and output_power(n + 1, n + 1, params, arch) >= threshold:
        n += 1
    return ScalePoint(bits, datarate, arch, n)
