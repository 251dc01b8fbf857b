# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""GEMM dimensions, im2col lowering and the exact integer GEMM."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from heana.errors import AccumulatorOverflowError, InvalidShapeError
from heana.modules.tensor.quant import QuantMatrix, code_range
from heana.schema.workload import ConvLayerShape

ACCUMULATOR_BITS = 32


@dataclass(frozen=True)
class GemmDims:
    """Sizes of ``O[C x D] = I[C x K] @ W[K x D]``."""

    C: int
    K: int
    D: int

    def __post_init__(self) -> None:
        """Reject empty dimensions."""
        for name in ("C", "K", "D"):
            if getattr(self, name) < 1:
                raise InvalidShapeError(f"{name}={getattr(self, name)} must be >= 1")

    @property
    def macs(self) -> int:
        """Multiply-accumulate count."""
        return self.C * self.K * self.D

    def __str__(self) -> str:
        """Render as ``CxKxD``."""
        return f"{self.C}x{self.K}x{self.D}"


@dataclass(frozen=True)
class GemmProblem:
    """Integer GEMM operands."""

    I: QuantMatrix
    W: QuantMatrix

    def __post_init__(self) -> None:
        """Check the shared dimension."""
        if self.I.cols != self.W.rows:
            raise InvalidShapeError(
                f"I is {self.I.rows}x{self.I.cols} but W is {self.W.rows}x{self.W.cols}"
            )

    @property
    def dims(self) -> GemmDims:
        """Problem dimensions."""
        return GemmDims(self.I.rows, self.I.cols, self.W.cols)


def lower_conv(shape: ConvLayerShape) -> GemmDims:
    """Per-group GEMM dimensions of a convolution under im2col.

    A layer with ``groups > 1`` runs ``shape.groups`` independent GEMMs of the
    returned size.
    """
    if shape.in_c % shape.groups or shape.out_c % shape.groups:
        raise InvalidShapeError(
            f"channels {shape.in_c}->{shape.out_c} not divisible by "
            f"groups={shape.groups}"
        )
    if shape.out_h < 1 or shape.out_w < 1:
        raise InvalidShapeError(
            f"{shape.k_h}x{shape.k_w} kernel with stride {shape.stride} and padding "
            f"{shape.padding} leaves a {shape.out_h}x{shape.out_w} output on a "
            f"{shape.in_h}x{shape.in_w} input"
        )
    return GemmDims(
        C=shape.out_h * shape.out_w,
        K=shape.k_h * shape.k_w * (shape.in_c // shape.groups),
        D=shape.out_c // shape.groups,
    )


def im2col(
    tensor: npt.NDArray[np.int64], shape: ConvLayerShape, group: int = 0
) -> npt.NDArray[np.int64]:
    """Toeplitz matrix of one channel group.

    Rows follow output positions in raster order; columns follow
    ``(k_h, k_w, c_in)`` with the channel fastest.
    """
    dims = lower_conv(shape)
    cin = shape.in_c // shape.groups
    channels = slice(group * cin, (group + 1) * cin)
    padded = np.pad(
        tensor[:, :, channels],
        ((shape.padding, shape.padding), (shape.padding, shape.padding), (0, 0)),
    )
    out = np.empty((dims.C, dims.K), dtype=np.int64)
    for oy in range(shape.out_h):
        for ox in range(shape.out_w):
            y, x = oy * shape.stride, ox * shape.stride
            window = padded[y : y + shape.k_h, x : x + shape.k_w, :]
            out[oy * shape.out_w + ox] = window.reshape(-1)
    return out


def conv_weights_to_gemm(
    kernel: npt.NDArray[np.int64], shape: ConvLayerShape, group: int = 0
) -> npt.NDArray[np.int64]:
    """Reshape a ``(k_h, k_w, c_in/groups, c_out)`` kernel into one group's W."""
    dims = lower_conv(shape)
    cols = slice(group * dims.D, (group + 1) * dims.D)
    return kernel[:, :, :, cols].reshape(dims.K, dims.D)


def gemm_exact(problem: GemmProblem) -> QuantMatrix:
    """Exact ``I @ W`` in a signed 32-bit accumulator.

    Raises:
        AccumulatorOverflowError: If any output leaves the accumulator range.

    """
    result = problem.I.data @ problem.W.data
    low, high = code_range(ACCUMULATOR_BITS, signed=True)
    if result.size and (result.min() < low or result.max() > high):
        raise AccumulatorOverflowError(ACCUMULATOR_BITS)
    return QuantMatrix(result, ACCUMULATOR_BITS, signed=True)
