# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Report formatters for the CLI."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, cast

from rich import box
from rich.console import Console
from rich.json import JSON
from rich.panel import Panel
from rich.table import Table

# plain text that must reach the stream byte for byte
_RAW_PRINT: Dict[str, Any] = {
    "markup": False,
    "highlight": False,
    "emoji": False,
    "soft_wrap": True,
}


def get_value(data: Dict[str, Any], keys: str, digits: int = 6) -> str:
    """Get the value at dot-separated ``keys`` in ``data`` as text.

    Supports list indexing, e.g. ``layers[0].name``. Floats are rendered with
    ``digits`` significant digits; missing values become ``-``.
    """
    value: Any = data
    for key in keys.split("."):
        getitem_match = re.match(r"(.+)\[(-?\d+)\]$", key)
        if getitem_match:
            value = value.get(getitem_match.group(1))[int(getitem_match.group(2))]
        elif value is not None:
            value = value.get(key)
    if isinstance(value, Enum):
        value = value.value
    if isinstance(value, list):
        value = ", ".join(str(v) for v in value)
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    if value is None:
        return "-"
    return str(value)


@dataclass
class Formatter:
    """Named renderer of simulator results."""

    name: str

    def __post_init__(self) -> None:
        """Attach a console."""
        self._console = Console()


@dataclass
class ListFormatter(Formatter):
    """Base interface for formatting rows of records."""

    fields: List[str]
    headers: List[str]

    def __post_init__(self) -> None:
        """Check that every field has a header."""
        super().__post_init__()
        if len(self.fields) != len(self.headers):
            raise ValueError("fields and headers must have the same length")
        self._styling_map: Dict[str, Any] = {}

    def render(self, data: List[Dict[str, Any]]) -> None:
        """Print ``data`` to the console."""
        raise NotImplementedError  # pragma: no cover

    def apply_styling(self, header: str, **kwargs) -> None:
        """Set rich column options for ``header``."""
        self._styling_map[header] = kwargs

    def rows(self, data: List[Dict[str, Any]]) -> List[List[str]]:
        """Cell text of every record."""
        return [[get_value(d, f) for f in self.fields] for d in data]


@dataclass
class TableFormatter(ListFormatter):
    """Rich table with one row per record."""

    caption: Optional[str] = None
    table: Optional[Table] = None

    def render(self, data: List[Dict[str, Any]]) -> None:
        """Print ``data`` as a table."""
        self._console.print(self.get_renderable(data))

    def get_renderable(self, data: List[Dict[str, Any]]) -> Table:
        """Build the table."""
        self.table = Table(title=self.name, caption=self.caption, box=box.SIMPLE)
        for header in self.headers:
            self.table.add_column(
                header, **self._styling_map.get(header, {}), overflow="fold"
            )
        for row in self.rows(data):
            self.table.add_row(*row)
        return cast(Table, self.table)


@dataclass
class PanelFormatter(ListFormatter):
    """Panel formatter for one record shown as key/value lines."""

    subtitle: Optional[str] = None
    panel: Optional[Panel] = None

    def render(self, data: List[Dict[str, Any]]) -> None:
        """Print ``data`` as a panel."""
        self._console.print(self.get_renderable(data))

    def get_renderable(self, data: List[Dict[str, Any]]) -> Panel:
        """Build the panel."""
        table = Table(box=None, show_header=False)
        table.add_column("k", style="dim bold")
        table.add_column("v")
        for row in self.rows(data):
            for k, v in zip(self.headers, row):
                table.add_row(k, v)
        self.panel = Panel(table, title=self.name, subtitle=self.subtitle)
        return self.panel


@dataclass
class CSVFormatter(ListFormatter):
    """Comma-separated rows with a header line."""

    def dumps(self, data: List[Dict[str, Any]]) -> str:
        """Render ``data`` as CSV text."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.fields)
        writer.writerows(self.rows(data))
        return buf.getvalue()

    def render(self, data: List[Dict[str, Any]]) -> None:
        """Print the CSV text unstyled."""
        self._console.print(self.dumps(data), end="", **_RAW_PRINT)


@dataclass
class JSONFormatter(Formatter):
    """JSON formatter; pretty in a panel, or raw for piping."""

    panel: Optional[Panel] = None
    raw: bool = False

    def dumps(self, data: Any) -> str:
        """Serialize ``data`` with sorted keys."""
        return json.dumps(data, indent=2, sort_keys=True)

    def render(self, data: Any) -> None:
        """Print ``data`` raw or inside a panel."""
        if self.raw:
            self._console.print(self.dumps(data), **_RAW_PRINT)
            return
        self._console.print(self.get_renderable(data))

    def get_renderable(self, data: Any) -> Panel:
        """Build the JSON panel."""
        self.panel = Panel(JSON(self.dumps(data)), title=self.name)
        return self.panel
