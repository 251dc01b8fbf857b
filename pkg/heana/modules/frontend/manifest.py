# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Workload manifest ingestion and lowering."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Any, List, Optional, Union

import yaml
from pydantic import ValidationError

from heana.errors import InvalidShapeError, ManifestParseError, ManifestValidationError
from heana.logging import logger
from heana.modules.perfmodel import LayerPlan
from heana.modules.tensor import GemmDims, lower_conv
from heana.schema.workload import LayerSpec, WorkloadManifest
from heana.utils.compat import model_dump, model_parse
from heana.utils.validate import describe_validation_error

WORKLOAD_DIR = Path(__file__).resolve().parents[2] / "data" / "workloads"


def shipped_workloads() -> List[str]:
    """Names of the packaged CNN manifests."""
    return sorted(path.stem for path in WORKLOAD_DIR.glob("*.yaml"))


def resolve_workload(ref: Union[str, Path]) -> Path:
    """Map a packaged workload name or a file path to a path."""
    path = Path(ref)
    if path.exists() or path.suffix:
        return path
    return WORKLOAD_DIR / f"{ref}.yaml"


def _layer_name(raw: Any, loc: tuple) -> Optional[str]:
    if len(loc) < 2 or loc[0] != "layers" or not isinstance(loc[1], int):
        return None
    try:
        return str(raw["layers"][loc[1]]["name"])
    except (KeyError, IndexError, TypeError):
        return f"#{loc[1]}"


def lower_layer(layer: LayerSpec) -> LayerPlan:
    """Lower one manifest layer to a schedulable plan."""
    if layer.shape is not None:
        shape = layer.shape
        if layer.kind.is_gemm:
            return LayerPlan(
                layer.name, layer.kind, dims=lower_conv(shape), groups=shape.groups
            )
        if shape.out_h < 1 or shape.out_w < 1:
            raise InvalidShapeError(
                f"window leaves a {shape.out_h}x{shape.out_w} output"
            )
        return LayerPlan(
            layer.name, layer.kind, outputs=shape.out_h * shape.out_w * shape.out_c
        )

    assert layer.dims is not None
    dims = GemmDims(layer.dims.C, layer.dims.K, layer.dims.D)
    if layer.kind.is_gemm:
        return LayerPlan(layer.name, layer.kind, dims=dims)
    return LayerPlan(layer.name, layer.kind, outputs=dims.C * dims.D)


def validate_manifest(manifest: WorkloadManifest) -> List[LayerPlan]:
    """Check manifest-level invariants and lower every layer.

    Raises:
        ManifestValidationError: Naming the first offending layer.

    """
    if not manifest.layers:
        raise ManifestValidationError("manifest has no layers")
    counts = Counter(layer.name for layer in manifest.layers)
    duplicates = [name for name, n in counts.items() if n > 1]
    if duplicates:
        raise ManifestValidationError("duplicate layer name", layer=duplicates[0])

    plans = []
    for layer in manifest.layers:
        if (layer.shape is None) == (layer.dims is None):
            raise ManifestValidationError(
                "exactly one of 'shape' and 'dims' is required", layer=layer.name
            )
        try:
            plans.append(lower_layer(layer))
        except InvalidShapeError as exc:
            raise ManifestValidationError(str(exc), layer=layer.name) from exc
    return plans


def load_manifest(text: str, source: str = "<string>") -> WorkloadManifest:
    """Parse and validate manifest YAML text.

    Raises:
        ManifestParseError: On malformed YAML, with the line number.
        ManifestValidationError: On schema or semantic errors.

    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise ManifestParseError(source, str(exc).splitlines()[0], line) from exc
    if not isinstance(raw, dict):
        raise ManifestParseError(source, "top level must be a mapping")

    try:
        manifest = model_parse(WorkloadManifest, raw)
    except ValidationError as exc:
        loc, msg = describe_validation_error(exc)[0]
        field = ".".join(str(part) for part in loc)
        raise ManifestValidationError(
            f"{field}: {msg}", layer=_layer_name(raw, tuple(loc))
        ) from exc

    validate_manifest(manifest)
    return manifest


def parse_manifest(path: Union[str, Path]) -> WorkloadManifest:
    """Read a manifest file, or a packaged workload by name."""
    resolved = resolve_workload(path)
    try:
        text = resolved.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestParseError(str(path), exc.strerror or str(exc)) from exc
    manifest = load_manifest(text, str(resolved))
    logger.debug(
        "Loaded manifest '%s' (%d layers)", manifest.name, len(manifest.layers)
    )
    return manifest


def serialize_manifest(manifest: WorkloadManifest) -> str:
    """Emit YAML that parses back to an equal manifest."""
    data = model_dump(manifest, exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False)


def lower_manifest(manifest: WorkloadManifest) -> List[LayerPlan]:
    """Schedulable plans of every layer, in manifest order."""
    return validate_manifest(manifest)
