# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Scalability sweeps over precision, datarate and architecture."""

from __future__ import annotations

import itertools
from typing import Iterable, List, Sequence

from heana.di.injector import get_settings
from heana.enums import Architecture
from heana.modules.linkbudget.equations import ScalePoint, max_n
from heana.schema.config import LinkBudgetParams
from heana.utils.parallel import map_ordered

DEFAULT_BITS = tuple(range(1, 9))
DEFAULT_DATARATES = (1e9, 5e9, 10e9)
DEFAULT_ARCHS = (Architecture.HEANA, Architecture.MAW, Architecture.AMW)


def scale_grid(
    params: LinkBudgetParams,
    bits: Iterable[int] = DEFAULT_BITS,
    datarates: Iterable[float] = DEFAULT_DATARATES,
    archs: Sequence[Architecture] = DEFAULT_ARCHS,
    threads: int = 0,
) -> List[ScalePoint]:
    """``max_n`` at every grid point, ordered by (arch, B, DR)."""
    grid = list(itertools.product(archs, list(bits), list(datarates)))
    return map_ordered(
        lambda point: max_n(point[1], point[2], params, point[0]),
        grid,
        threads,
        progress=get_settings().show_progress,
        desc="scale",
    )
