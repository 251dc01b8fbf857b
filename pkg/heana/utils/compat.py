# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Pydantic v1/v2 compatibility helpers."""

from __future__ import annotations

import json
from typing import Any, Dict, Type, TypeVar, cast

import pydantic

_ModelT = TypeVar("_ModelT", bound=pydantic.BaseModel)

PYDANTIC_V2 = pydantic.VERSION.startswith("2.")


def model_parse(model: Type[_ModelT], data: Any) -> _ModelT:
    """Validate ``data`` into ``model``."""
    if PYDANTIC_V2:
        return model.model_validate(data)  # type: ignore
    return model.parse_obj(data)  # type: ignore


def model_dump(
    model: pydantic.BaseModel,
    *,
    exclude_none: bool = False,
    by_alias: bool = False,
) -> Dict[str, Any]:
    """Dump a model to plain python values (enums as their values)."""
    if PYDANTIC_V2:
        return model.model_dump(  # type: ignore
            mode="json", exclude_none=exclude_none, by_alias=by_alias
        )
    # v1 has no json mode; round-trip through its encoder to flatten enums.
    return cast(
        Dict[str, Any],
        json.loads(
            model.json(exclude_none=exclude_none, by_alias=by_alias)  # type: ignore
        ),
    )


def model_copy(model: _ModelT, update: Dict[str, Any]) -> _ModelT:
    """Copy ``model`` with fields replaced, re-validating the result."""
    data = model_dump(model)
    data.update(update)
    return model_parse(type(model), data)
