# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

from __future__ import annotations

from typing import Iterator

import numpy as np
import pytest

from heana.di.injector import patch_modules
from heana.di.modules import SequentialSettingsModule
from heana.settings import THREADS_ENV


@pytest.fixture(autouse=True)
def sequential_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    monkeypatch.delenv(THREADS_ENV, raising=False)
    with patch_modules(SequentialSettingsModule):
        yield


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
