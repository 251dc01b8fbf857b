# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""HEANA-Sim enums."""

from __future__ import annotations

from enum import Enum


class ArchFamily(str, Enum):
    """Device family sharing link-budget and area terms."""

    HEANA = "heana"
    AMW = "amw"
    MAW = "maw"

    def __str__(self) -> str:
        """Return the family name."""
        return self.value


class Architecture(str, Enum):
    """Photonic GEMM accelerator architecture."""

    HEANA = "heana"
    AMW = "amw"
    MAW = "maw"
    AMW_BPCA = "amw-bpca"
    MAW_BPCA = "maw-bpca"

    def __str__(self) -> str:
        """Return the CLI spelling."""
        return self.value

    @property
    def has_bpca(self) -> bool:
        """Whether partial sums accumulate on BPCA capacitors."""
        return self is Architecture.HEANA or self.value.endswith("-bpca")

    @property
    def family(self) -> ArchFamily:
        """Device family (``*_BPCA`` variants keep their base family)."""
        return ArchFamily(self.value.split("-")[0])

    @property
    def label(self) -> str:
        """Report label, e.g. ``AMW_BPCA``."""
        return self.value.upper().replace("-", "_")


class Dataflow(str, Enum):
    """Stationarity of the GEMM loop nest."""

    OS = "os"
    IS = "is"
    WS = "ws"

    def __str__(self) -> str:
        """Return the CLI spelling."""
        return self.value


class Routing(str, Enum):
    """How a tile reaches the DPEs of a DPU."""

    BROADCAST = "broadcast"
    UNICAST = "unicast"


class LayerKind(str, Enum):
    """Workload layer kind."""

    CONV = "conv"
    FC = "fc"
    POOL = "pool"
    ACTIVATION = "activation"

    @property
    def is_gemm(self) -> bool:
        """Whether the layer lowers onto DPUs."""
        return self in (LayerKind.CONV, LayerKind.FC)


class OutputFormat(str, Enum):
    """CLI output format."""

    CSV = "csv"
    JSON = "json"
    TABLE = "table"
