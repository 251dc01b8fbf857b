# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Integer-quantized matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import numpy.typing as npt

from heana.errors import InvalidQuantizationError, OperandRangeError

MIN_BITS = 1
MAX_BITS = 16


def code_range(bits: int, signed: bool) -> Tuple[int, int]:
    """Representable integer range of a ``bits``-wide element."""
    if signed:
        return -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    return 0, (1 << bits) - 1


@dataclass(frozen=True, eq=False)
class QuantMatrix:
    """Immutable integer matrix with a declared element width.

    Attributes:
        data: Row-major int64 elements, shape ``(rows, cols)``, read-only.
        bits: Element bit-width.
        signed: Two's-complement range when true.
        scale: Real value of one code (1.0 for raw integer data).

    """

    data: npt.NDArray[np.int64]
    bits: int
    signed: bool
    scale: float = field(default=1.0, compare=False)

    def __post_init__(self) -> None:
        """Validate shape and range, then freeze the buffer."""
        array = np.array(self.data, dtype=np.int64, copy=True)
        if array.ndim != 2:
            raise InvalidQuantizationError(
                self.bits, f"expected 2-D data, got {array.ndim}-D"
            )
        if self.bits < 1:
            raise InvalidQuantizationError(self.bits)
        low, high = code_range(self.bits, self.signed)
        if array.size:
            lo_seen, hi_seen = int(array.min()), int(array.max())
            if lo_seen < low:
                raise OperandRangeError("element", lo_seen, low, high)
            if hi_seen > high:
                raise OperandRangeError("element", hi_seen, low, high)
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    @property
    def rows(self) -> int:
        """Row count."""
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        """Column count."""
        return int(self.data.shape[1])

    def __eq__(self, other: object) -> bool:
        """Element-wise equality with identical width and signedness."""
        if not isinstance(other, QuantMatrix):
            return NotImplemented
        return (
            self.bits == other.bits
            and self.signed == other.signed
            and np.array_equal(self.data, other.data)
        )

    def dequantize(self) -> npt.NDArray[np.float64]:
        """Real-valued reconstruction."""
        return self.data.astype(np.float64) * self.scale

    def negated(self) -> QuantMatrix:
        """Element-wise negation (signed matrices only)."""
        return QuantMatrix(-self.data, self.bits, True, self.scale)

    @classmethod
    def identity(cls, size: int, bits: int = 4, signed: bool = False) -> QuantMatrix:
        """Integer identity matrix."""
        return cls(np.eye(size, dtype=np.int64), bits, signed)

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        rows: int,
        cols: int,
        bits: int,
        signed: bool,
        symmetric: bool = True,
    ) -> QuantMatrix:
        """Uniform random codes; ``symmetric`` excludes the two's-complement minimum."""
        low, high = code_range(bits, signed)
        if signed and symmetric:
            low = -high
        return cls(rng.integers(low, high + 1, size=(rows, cols)), bits, signed)


def quantize(values: npt.ArrayLike, bits: int, signed: bool) -> QuantMatrix:
    """Symmetric uniform quantization with round-half-away-from-zero.

    Args:
        values: Real 2-D matrix.
        bits: Element width in [1, 16]; signed quantization needs at least 2.
        signed: Produce codes in ``[-qmax, qmax]`` instead of ``[0, qmax]``.

    Returns:
        QuantMatrix: Codes with ``scale`` set so ``codes * scale`` approximates
        ``values``.

    Raises:
        InvalidQuantizationError: If ``bits`` is outside the supported range.

    """
    if not MIN_BITS <= bits <= MAX_BITS:
        raise InvalidQuantizationError(
            bits, f"bits must be in [{MIN_BITS}, {MAX_BITS}]"
        )
    if signed and bits < 2:
        raise InvalidQuantizationError(bits, "signed quantization needs >= 2 bits")

    array = np.atleast_2d(np.asarray(values, dtype=np.float64))
    qmax = (1 << (bits - 1)) - 1 if signed else (1 << bits) - 1
    peak = float(np.max(np.abs(array))) if array.size else 0.0
    scale = peak / qmax if peak > 0 else 1.0

    scaled = array / scale
    codes = np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)
    codes = np.clip(codes, -qmax if signed else 0, qmax)
    return QuantMatrix(codes.astype(np.int64), bits, signed, scale)
