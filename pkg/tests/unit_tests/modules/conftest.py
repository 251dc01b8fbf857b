# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

from __future__ import annotations

import os

import pytest

from heana.enums import Architecture, Dataflow
from heana.modules.dataflow import DpuConfig
from heana.modules.frontend import load_params, load_peripherals
from heana.modules.tensor import GemmDims
from heana.schema.config import LinkBudgetParams, PeripheralModel

SPEC_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "specs")
TRACE_DIR = os.path.join(SPEC_DIR, "traces")

ALL_ARCHS = list(Architecture)
ALL_DATAFLOWS = list(Dataflow)


@pytest.fixture
def worked_dims() -> GemmDims:
    """The 4x4x4 GEMM of the dataflow walkthrough."""
    return GemmDims(4, 4, 4)


@pytest.fixture
def worked_cfg() -> DpuConfig:
    return DpuConfig(N=2, M=2, p=4, arch=Architecture.HEANA)


@pytest.fixture(scope="session")
def params() -> LinkBudgetParams:
    return load_params()


@pytest.fixture(scope="session")
def peripherals() -> PeripheralModel:
    return load_peripherals()
