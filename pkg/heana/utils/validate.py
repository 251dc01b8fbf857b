# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Validation utilities."""

from __future__ import annotations

from enum import Enum
from typing import Any, List, Sequence, Tuple, Type, TypeVar

from pydantic import ValidationError

from heana.errors import InvalidConfigError

_EnumT = TypeVar("_EnumT", bound=Enum)

SUPPORTED_DATARATES_GSPS = (1, 5, 10)


def validate_enums(val: Any, enum_cls: Type[_EnumT]) -> _EnumT:
    """Coerce ``val`` into ``enum_cls`` or raise ``InvalidConfigError``."""
    try:
        return enum_cls(val)
    except ValueError as exc:
        supported = sorted(str(e.value) for e in enum_cls)
        raise InvalidConfigError(
            f"'{val}' is not one of {supported}"
        ) from exc


def validate_datarate(gsps: float) -> float:
    """Return the datarate in symbols/s for a GS/s value in {1, 5, 10}."""
    if gsps not in SUPPORTED_DATARATES_GSPS:
        raise InvalidConfigError(
            f"datarate {gsps:g} GS/s not in {list(SUPPORTED_DATARATES_GSPS)}"
        )
    return float(gsps) * 1e9


def validate_positive(name: str, value: float) -> None:
    """Reject non-positive counts and rates."""
    if value <= 0:
        raise InvalidConfigError(f"{name} must be positive, got {value}")


def parse_dims(text: str) -> Tuple[int, int, int]:
    """Parse ``"C,K,D"`` into three positive ints."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise InvalidConfigError(f"dims must be 'C,K,D', got '{text}'")
    try:
        c, k, d = (int(part) for part in parts)
    except ValueError as exc:
        raise InvalidConfigError(f"dims must be integers, got '{text}'") from exc
    for name, value in zip("CKD", (c, k, d)):
        validate_positive(name, value)
    return c, k, d


def describe_validation_error(exc: ValidationError) -> List[Tuple[Sequence[Any], str]]:
    """Flatten pydantic errors into ``(location, message)`` pairs."""
    issues = []
    for error in exc.errors():
        loc = tuple(error.get("loc", ()))
        msg = error.get("msg", "invalid value")
        field = loc[-1] if loc else "?"
        issues.append((loc, f"{msg}. Correct the field '{field}'"))
    return issues
