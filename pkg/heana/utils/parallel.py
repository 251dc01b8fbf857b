# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Order-preserving fan-out over a thread pool."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from tqdm import tqdm

_T = TypeVar("_T")
_R = TypeVar("_R")


def map_ordered(
    fn: Callable[[_T], _R],
    items: Iterable[_T],
    threads: int = 0,
    *,
    progress: bool = False,
    desc: Optional[str] = None,
) -> List[_R]:
    """Apply ``fn`` to ``items``; results always come back in input order.

    ``threads == 0`` runs in the calling context.
    """
    work: Sequence[_T] = list(items)
    with tqdm(total=len(work), desc=desc, disable=not progress, leave=False) as pbar:
        if threads <= 0 or len(work) <= 1:
            results = []
            for item in work:
                results.append(fn(item))
                pbar.update(1)
            return results

        with ThreadPoolExecutor(max_workers=threads) as executor:
            futures = [executor.submit(fn, item) for item in work]
            for future in futures:
                future.add_done_callback(lambda _: pbar.update(1))
            return [future.result() for future in futures]
