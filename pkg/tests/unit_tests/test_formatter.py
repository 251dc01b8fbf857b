# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

from __future__ import annotations

import json

import pytest
from rich.panel import Panel
from rich.table import Table

from heana.enums import Architecture
from heana.formatter import (
    CSVFormatter,
    JSONFormatter,
    PanelFormatter,
    TableFormatter,
    get_value,
)

ROWS = [
    {"run": {"arch": "heana"}, "fps": 1234.5678912, "violations": []},
    {"run": {"arch": "amw"}, "fps": 0.5, "violations": ["conv1: tir"]},
]


@pytest.fixture
def table_formatter() -> TableFormatter:
    return TableFormatter(
        name="Reports",
        fields=["run.arch", "fps"],
        headers=["Arch", "FPS"],
        caption="Frames per second",
    )


@pytest.fixture
def panel_formatter() -> PanelFormatter:
    return PanelFormatter(
        name="Report",
        fields=["run.arch", "fps", "violations"],
        headers=["Arch", "FPS", "Violations"],
        subtitle="single run",
    )


@pytest.fixture
def csv_formatter() -> CSVFormatter:
    return CSVFormatter(
        name="Reports", fields=["run.arch", "fps"], headers=["run.arch", "fps"]
    )


def test_get_value():
    data = {
        "k1": {"k2": {"k3": "v1"}, "k5": 2.0},
        "k6": None,
        "k7": [{"k8": "v5"}, {"k8": "v6"}],
        "k9": ["a", "b"],
        "k10": Architecture.AMW_BPCA,
    }

    assert get_value(data, "k1.k2.k3") == "v1"
    assert get_value(data, "k1.k5") == "2"
    assert get_value(data, "k6") == "-"
    assert get_value(data, "missing") == "-"
    assert get_value(data, "k6.deeper") == "-"
    assert get_value(data, "k7[0].k8") == "v5"
    assert get_value(data, "k7[-1].k8") == "v6"
    assert get_value(data, "k9") == "a, b"
    assert get_value(data, "k10") == "amw-bpca"


def test_get_value_float_digits():
    assert get_value({"x": 1 / 3}, "x") == "0.333333"
    assert get_value({"x": 1 / 3}, "x", digits=2) == "0.33"
    assert get_value({"x": 1.5e-9}, "x") == "1.5e-09"


def test_mismatched_headers():
    with pytest.raises(ValueError):
        TableFormatter(name="bad", fields=["a", "b"], headers=["A"])


def test_table_formatter(
    table_formatter: TableFormatter, capsys: pytest.CaptureFixture
):
    table = table_formatter.get_renderable(ROWS)
    assert isinstance(table, Table)
    assert table.row_count == 2

    table_formatter.apply_styling("FPS", style="blue")
    table_formatter.render(ROWS)
    out = capsys.readouterr().out
    assert "Arch" in out
    assert "heana" in out
    assert "1234.57" in out
    assert "0.5" in out


def test_panel_formatter(
    panel_formatter: PanelFormatter, capsys: pytest.CaptureFixture
):
    panel = panel_formatter.get_renderable(ROWS[1:])
    assert isinstance(panel, Panel)
    panel_formatter.render(ROWS[1:])
    out = capsys.readouterr().out
    assert "Report" in out
    assert "Violations" in out
    assert "conv1: tir" in out


def test_csv_formatter(csv_formatter: CSVFormatter, capsys: pytest.CaptureFixture):
    text = csv_formatter.dumps(ROWS)
    assert text == "run.arch,fps\nheana,1234.57\namw,0.5\n"

    csv_formatter.render(ROWS)
    assert capsys.readouterr().out == text


def test_json_formatter(capsys: pytest.CaptureFixture):
    data = {"k2": [1, 2], "k1": "v1"}
    formatter = JSONFormatter(name="Metadata")
    panel = formatter.get_renderable(data)
    assert isinstance(panel, Panel)
    formatter.render(data)
    out = capsys.readouterr().out
    assert "k1" in out
    assert "v1" in out

    raw = JSONFormatter(name="Metadata", raw=True)
    assert raw.dumps(data).index('"k1"') < raw.dumps(data).index('"k2"')
    raw.render(data)
    assert json.loads(capsys.readouterr().out) == data
