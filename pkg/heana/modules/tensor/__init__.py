# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Integer tensors, convolution lowering and the exact GEMM oracle."""

from __future__ import annotations

from heana.modules.tensor.gemm import (
    ACCUMULATOR_BITS,
    GemmDims,
    GemmProblem,
    conv_weights_to_gemm,
    gemm_exact,
    im2col,
    lower_conv,
)
from heana.modules.tensor.quant import QuantMatrix, code_range, quantize

__all__ = [
    "ACCUMULATOR_BITS",
    "GemmDims",
    "GemmProblem",
    "QuantMatrix",
    "code_range",
    "conv_weights_to_gemm",
    "gemm_exact",
    "im2col",
    "lower_conv",
    "quantize",
]
