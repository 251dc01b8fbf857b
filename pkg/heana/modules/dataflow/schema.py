# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Dataflow schedule types."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Tuple

from heana.enums import Architecture, Dataflow, Routing
from heana.errors import InvalidConfigError
from heana.modules.tensor import GemmDims

Range = Tuple[int, int]

DEFAULT_CAPACITORS = 4608


@dataclass(frozen=True)
class DpuConfig:
    """One DPU: ``M`` DPEs of ``N`` wavelengths each."""

    N: int
    M: int
    p: int = DEFAULT_CAPACITORS
    datarate: float = 1e9
    arch: Architecture = Architecture.HEANA

    def __post_init__(self) -> None:
        """Validate sizes."""
        if self.N < 1 or self.M < 1 or self.p < 1:
            raise InvalidConfigError(
                f"DPU needs N, M, p >= 1, got N={self.N}, M={self.M}, p={self.p}"
            )
        if self.datarate <= 0:
            raise InvalidConfigError(f"datarate must be > 0, got {self.datarate}")

    @property
    def has_bpca(self) -> bool:
        """Whether DPEs accumulate on BPCA capacitors."""
        return self.arch.has_bpca

    def k_blocks(self, dims: GemmDims) -> int:
        """Temporal folding cycles per output tile, ``ceil(K/N)``."""
        return math.ceil(dims.K / self.N)

    def inner_blocks(self, dims: GemmDims, dataflow: Dataflow) -> int:
        """Output tiles per outer iteration."""
        spread = dims.C if dataflow is Dataflow.WS else dims.D
        return math.ceil(spread / self.M)

    def outer_iterations(self, dims: GemmDims, dataflow: Dataflow) -> int:
        """Outermost loop trip count: rows of I, or columns of W for WS."""
        return dims.D if dataflow is Dataflow.WS else dims.C


@dataclass(frozen=True)
class TileMap:
    """Tile shapes and routing of one dataflow."""

    input_tile: Tuple[int, int]
    weight_tile: Tuple[int, int]
    input_routing: Routing
    weight_routing: Routing


def tile_map(cfg: DpuConfig, dataflow: Dataflow) -> TileMap:
    """Operand tiling of ``dataflow`` on ``cfg``."""
    if dataflow is Dataflow.WS:
        return TileMap((cfg.M, cfg.N), (cfg.N, 1), Routing.UNICAST, Routing.BROADCAST)
    return TileMap((1, cfg.N), (cfg.N, cfg.M), Routing.BROADCAST, Routing.UNICAST)


def _span(rng: Range) -> int:
    return rng[1] - rng[0]


@dataclass(frozen=True)
class ComputationFrame:
    """Work mapped onto one DPU in one scheduling step.

    Ranges are half-open and clipped to the real matrix; the padded remainder
    of a tile feeds zeros. ``input_changed``/``weight_changed`` compare with the
    previous frame of the schedule.
    """

    frame_id: int
    outer_iter: int
    tf_cycle: int
    ts_cycle: int
    rows: Range
    k_range: Range
    cols: Range
    is_final_for_output: bool
    capacitor: Optional[int] = None
    input_changed: bool = True
    weight_changed: bool = True

    @property
    def input_block(self) -> Tuple[Range, Range]:
        """``(rows, k)`` of I."""
        return self.rows, self.k_range

    @property
    def weight_block(self) -> Tuple[Range, Range]:
        """``(k, cols)`` of W."""
        return self.k_range, self.cols

    @property
    def output_block(self) -> Tuple[Range, Range]:
        """``(rows, cols)`` of O."""
        return self.rows, self.cols

    @property
    def k_len(self) -> int:
        """Real wavelengths in use."""
        return _span(self.k_range)

    @property
    def lanes(self) -> int:
        """Real outputs computed, one per active DPE."""
        return _span(self.rows) * _span(self.cols)

    @property
    def input_elements(self) -> int:
        """Real elements of the input tile."""
        return _span(self.rows) * self.k_len

    @property
    def weight_elements(self) -> int:
        """Real elements of the weight tile."""
        return self.k_len * _span(self.cols)

    def outputs(self) -> List[Tuple[int, int]]:
        """Output coordinates in DPE order."""
        return [(r, c) for r in range(*self.rows) for c in range(*self.cols)]


@dataclass
class EventCounts:
    """Event counters of a schedule or of a whole run."""

    frames: int = 0
    adc_conversions: int = 0
    dac_conversions: int = 0
    input_reads: int = 0
    weight_reads: int = 0
    output_writes: int = 0
    psum_reads: int = 0
    psum_writes: int = 0
    capacitor_switches: int = 0
    reduction_ops: int = 0

    def __add__(self, other: EventCounts) -> EventCounts:
        """Field-wise sum."""
        return EventCounts(
            **{
                f.name: getattr(self, f.name) + getattr(other, f.name)
                for f in fields(self)
            }
        )

    def scaled(self, factor: int) -> EventCounts:
        """Counts of ``factor`` repetitions."""
        return EventCounts(
            **{f.name: getattr(self, f.name) * factor for f in fields(self)}
        )

    def as_dict(self) -> Dict[str, int]:
        """Plain mapping in declaration order."""
        return asdict(self)


@dataclass
class Schedule:
    """Ordered frames of one GEMM under one dataflow."""

    dataflow: Dataflow
    dims: GemmDims
    config: DpuConfig
    frames: List[ComputationFrame] = field(default_factory=list)
    counters: EventCounts = field(default_factory=EventCounts)

    @property
    def k_blocks(self) -> int:
        """``ceil(K/N)``."""
        return self.config.k_blocks(self.dims)

    @property
    def inner_blocks(self) -> int:
        """Output tiles per outer iteration."""
        return self.config.inner_blocks(self.dims, self.dataflow)
