# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Rendering command results to the terminal or a file."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional

import typer

from heana.enums import OutputFormat
from heana.errors import InvalidConfigError
from heana.formatter import CSVFormatter, JSONFormatter, PanelFormatter, TableFormatter


def emit(
    name: str,
    rows: List[Dict[str, Any]],
    fields: List[str],
    fmt: OutputFormat,
    out: Optional[Path] = None,
    payload: Any = None,
    panel: bool = False,
) -> None:
    """Write ``rows`` as CSV or a table, or ``payload`` (default ``rows``) as JSON.

    Table output only goes to the terminal.
    """
    if fmt is OutputFormat.TABLE:
        if out is not None:
            raise InvalidConfigError("table output cannot be written to a file")
        if panel:
            PanelFormatter(name=name, fields=fields, headers=fields).render(rows)
        else:
            TableFormatter(name=name, fields=fields, headers=fields).render(rows)
        return

    if fmt is OutputFormat.JSON:
        formatter = JSONFormatter(name=name, raw=True)
        data = rows if payload is None else payload
        if out is None:
            formatter.render(data)
            return
        text = formatter.dumps(data) + "\n"
    else:
        csv_formatter = CSVFormatter(name=name, fields=fields, headers=fields)
        if out is None:
            csv_formatter.render(rows)
            return
        text = csv_formatter.dumps(rows)

    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    typer.secho(f"Wrote {out}", err=True, fg=typer.colors.BLUE)
