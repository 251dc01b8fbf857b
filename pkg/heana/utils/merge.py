# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Nested dictionary merging for layered config files."""

from __future__ import annotations

import copy
from functools import reduce
from typing import Any, Dict, List

from typing_extensions import TypeAlias

NestedDict: TypeAlias = Dict[str, Any]


def merge_dict(base: NestedDict, override: NestedDict) -> NestedDict:
    """Return ``base`` updated recursively by ``override`` (override wins).

    Neither argument is modified.
    """
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = merge_dict(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def merge_dicts(dicts: List[NestedDict]) -> NestedDict:
    """Merge layers left to right."""
    return reduce(merge_dict, dicts, {})
