# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Workload manifest schema."""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field

from heana.enums import LayerKind


class ConvLayerShape(BaseModel):
    """Convolution (or pooling window) geometry, channels-last."""

    in_h: int = Field(ge=1)
    in_w: int = Field(ge=1)
    in_c: int = Field(ge=1)
    k_h: int = Field(ge=1)
    k_w: int = Field(ge=1)
    out_c: int = Field(ge=1)
    stride: int = Field(default=1, ge=1)
    padding: int = Field(default=0, ge=0)
    groups: int = Field(default=1, ge=1)

    @property
    def out_h(self) -> int:
        """Output rows."""
        return (self.in_h + 2 * self.padding - self.k_h) // self.stride + 1

    @property
    def out_w(self) -> int:
        """Output columns."""
        return (self.in_w + 2 * self.padding - self.k_w) // self.stride + 1


class GemmDimsSpec(BaseModel):
    """Explicit GEMM dimensions of a layer."""

    C: int = Field(ge=1)
    K: int = Field(ge=1)
    D: int = Field(ge=1)


class LayerSpec(BaseModel):
    """One manifest layer; exactly one of ``shape`` and ``dims`` is set."""

    name: str = Field(min_length=1)
    kind: LayerKind
    shape: Optional[ConvLayerShape] = None
    dims: Optional[GemmDimsSpec] = None


class WorkloadManifest(BaseModel):
    """Shape-only CNN description."""

    name: str = Field(min_length=1)
    bits: int = Field(default=4, ge=1, le=16)
    batch: int = Field(default=1, ge=1)
    reconstructed: bool = False
    description: Optional[str] = None
    layers: List[LayerSpec] = Field(default_factory=list)
