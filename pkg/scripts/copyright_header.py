# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Attach or verify the project copyright header on Python sources."""

from __future__ import annotations

import re
from datetime import datetime
from pathlib import Path
from typing import List

import typer

HEADER_PATTERN = re.compile(
    r"# Copyright \(c\) \b\d{4}\b-present, HEANA-Sim Authors\. All rights reserved\."
)
SOURCE_GLOBS = ("**/*.py", "**/*.pyi")


def _header() -> str:
    return (
        f"# Copyright (c) {datetime.now().year}-present, HEANA-Sim Authors. "
        "All rights reserved."
    )


def format_copyright_header(
    paths: List[str] = typer.Argument(..., help="List of paths to evaluate."),
    check_only: bool = typer.Option(False, "--check", help="Only report files."),
) -> None:
    """Prepend the copyright header to every source file lacking one."""
    missing = 0
    for path in paths:
        for pattern in SOURCE_GLOBS:
            for file in sorted(Path(path).rglob(pattern)):
                content = file.read_text(encoding="utf-8")
                first_line = content.splitlines()[0] if content else ""
                if has_header(first_line):
                    continue

                missing += 1
                if check_only:
                    typer.secho(
                        f"Invalid copyright header found in {file}!",
                        fg=typer.colors.RED,
                    )
                    continue

                new_content = _header() + "\n" if not content else (
                    _header() + "\n\n" + content
                )
                file.write_text(new_content, encoding="utf-8")

    if check_only and missing:
        raise typer.Exit(1)


def has_header(line: str) -> bool:
    """Return whether ``line`` is a valid copyright header."""
    return HEADER_PATTERN.match(line) is not None


if __name__ == "__main__":
    typer.run(format_copyright_header)
