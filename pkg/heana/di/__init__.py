# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Dependency injection."""
