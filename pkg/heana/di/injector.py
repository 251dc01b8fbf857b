# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""HEANA-Sim dependency injector."""

from __future__ import annotations

from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, Optional, Type, Union

from injector import Binder, Injector, Module

from heana.settings import Settings

_InstallableModuleType = Union[Callable[[Binder], None], Module, Type[Module]]
_Modules = Union[_InstallableModuleType, Iterable[_InstallableModuleType], None]

default_injector = Injector()
test_injector: Optional[Injector] = None


def get_injector() -> Injector:
    """Get the active injector."""
    return test_injector or default_injector


def get_settings() -> Settings:
    """Resolve the bound runtime settings."""
    return get_injector().get(Settings)  # type: ignore[type-abstract]


@contextmanager
def patch_modules(
    modules: _Modules = None, override_defaults: bool = False
) -> Iterator[None]:
    """Temporarily install ``modules`` on top of the active bindings."""
    global test_injector  # pylint: disable=global-statement
    old_injector = test_injector

    parent: Optional[Injector] = None
    if old_injector is not None:
        parent = old_injector
    elif override_defaults:
        parent = default_injector

    test_injector = Injector(modules, parent=parent)
    try:
        yield
    finally:
        test_injector = old_injector


def set_default_modules(modules: _Modules = None) -> None:
    """Set default DI modules."""
    global default_injector  # pylint: disable=global-statement
    default_injector = Injector(modules)
