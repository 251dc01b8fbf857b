# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Modules that configure bindings to providers."""

from __future__ import annotations

from injector import Binder, Module

from heana import settings


class SettingsModule(Module):
    """Environment-backed settings."""

    def configure(self, binder: Binder) -> None:
        """Bind ``Settings`` to the environment reader."""
        binder.bind(settings.Settings, to=settings.EnvSettings)  # type: ignore


class SequentialSettingsModule(Module):
    """Single-context settings, used by tests."""

    def configure(self, binder: Binder) -> None:
        """Bind ``Settings`` to the sequential defaults."""
        binder.bind(settings.Settings, to=settings.SequentialSettings)  # type: ignore


default_modules = [SettingsModule]
