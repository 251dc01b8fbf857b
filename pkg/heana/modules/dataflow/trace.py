# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Line-oriented schedule traces.

One frame per line, tab-separated ``key=value`` fields::

    frame=1  outer=0  tf=0  ts=0  rows=0:1  k=0:2  cols=0:2  cap=1  final=0

Ranges are half-open. ``cap=-`` marks frames without a BPCA capacitor.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, TextIO, Tuple

from heana.errors import ConfigParseError
from heana.modules.dataflow.schema import ComputationFrame, Range, Schedule

TRACE_FIELDS = ("frame", "outer", "tf", "ts", "rows", "k", "cols", "cap", "final")


def _fmt_range(rng: Range) -> str:
    return f"{rng[0]}:{rng[1]}"


def _parse_range(text: str) -> Tuple[int, int]:
    start, stop = text.split(":")
    return int(start), int(stop)


def format_frame(frame: ComputationFrame) -> str:
    """Render one trace record."""
    values = (
        frame.frame_id,
        frame.outer_iter,
        frame.tf_cycle,
        frame.ts_cycle,
        _fmt_range(frame.rows),
        _fmt_range(frame.k_range),
        _fmt_range(frame.cols),
        "-" if frame.capacitor is None else frame.capacitor,
        int(frame.is_final_for_output),
    )
    return "\t".join(f"{key}={value}" for key, value in zip(TRACE_FIELDS, values))


def dump_trace(schedule: Schedule, stream: TextIO) -> None:
    """Write every frame of ``schedule`` to ``stream``."""
    for frame in schedule.frames:
        stream.write(format_frame(frame) + "\n")


def iter_trace(schedule: Schedule) -> Iterator[str]:
    """Trace lines of ``schedule``."""
    return (format_frame(frame) for frame in schedule.frames)


def load_trace(
    lines: Iterable[str], source: str = "<trace>"
) -> List[ComputationFrame]:
    """Parse trace records back into frames.

    Tile-change flags are recomputed from consecutive records.
    """
    frames: List[ComputationFrame] = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = dict(item.split("=", 1) for item in line.strip().split("\t"))
            rows, k_range, cols = (
                _parse_range(record["rows"]),
                _parse_range(record["k"]),
                _parse_range(record["cols"]),
            )
            previous = frames[-1] if frames else None
            frames.append(
                ComputationFrame(
                    frame_id=int(record["frame"]),
                    outer_iter=int(record["outer"]),
                    tf_cycle=int(record["tf"]),
                    ts_cycle=int(record["ts"]),
                    rows=rows,
                    k_range=k_range,
                    cols=cols,
                    is_final_for_output=record["final"] == "1",
                    capacitor=None if record["cap"] == "-" else int(record["cap"]),
                    input_changed=previous is None
                    or previous.input_block != (rows, k_range),
                    weight_changed=previous is None
                    or previous.weight_block != (k_range, cols),
                )
            )
        except (KeyError, ValueError) as exc:
            raise ConfigParseError(
                f"{source}:{lineno}", f"bad trace record: {exc}"
            ) from exc
    return frames
