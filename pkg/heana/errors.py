# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""HEANA-Sim exceptions."""

from __future__ import annotations

from typing import Optional

EXIT_INTERNAL = 1
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_CAPACITY = 5
EXIT_NO_SOLUTION = 6


class HeanaError(Exception):
    """Base class for simulator errors."""

    exit_code: int = EXIT_INTERNAL


class ValidationFailure(HeanaError):
    """Inputs violate a documented precondition."""

    exit_code = EXIT_VALIDATION


class InvalidShapeError(ValidationFailure):
    """Layer or GEMM shape cannot be lowered."""

    def __init__(self, detail: str) -> None:
        """Initialize InvalidShapeError."""
        super().__init__(f"Invalid shape: {detail}")


class InvalidQuantizationError(ValidationFailure):
    """Unsupported bit-width or signedness."""

    def __init__(self, bits: int, detail: Optional[str] = None) -> None:
        """Initialize InvalidQuantizationError."""
        msg = f"Unsupported quantization width {bits}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class OperandRangeError(ValidationFailure):
    """Operand does not fit its declared bit-width."""

    def __init__(self, name: str, value: int, low: int, high: int) -> None:
        """Initialize OperandRangeError."""
        super().__init__(f"Operand {name}={value} outside [{low}, {high}]")


class CapacitorIndexError(ValidationFailure):
    """Capacitor index outside the bank."""

    def __init__(self, index: int, p: int) -> None:
        """Initialize CapacitorIndexError."""
        super().__init__(f"Capacitor index {index} outside [1, {p}]")


class InvalidConfigError(ValidationFailure):
    """Invalid configuration value."""

    def __init__(self, detail: Optional[str] = None) -> None:
        """Initialize InvalidConfigError."""
        super().__init__(f"Invalid configuration provided: {detail}")


class ConfigMismatchError(ValidationFailure):
    """Manifest and accelerator configuration disagree."""

    def __init__(self, detail: str) -> None:
        """Initialize ConfigMismatchError."""
        super().__init__(f"Manifest/config mismatch: {detail}")


class ManifestValidationError(ValidationFailure):
    """Manifest parsed but is semantically invalid."""

    def __init__(self, detail: str, layer: Optional[str] = None) -> None:
        """Initialize ManifestValidationError."""
        self.layer = layer
        where = f" (layer '{layer}')" if layer else ""
        super().__init__(f"Invalid workload manifest{where}: {detail}")


class MissingBaselineError(ValidationFailure):
    """Baseline report id not among the compared reports."""

    def __init__(self, baseline: str) -> None:
        """Initialize MissingBaselineError."""
        super().__init__(f"Baseline report '{baseline}' not found")


class ParseFailure(HeanaError):
    """Input file is not well-formed."""

    exit_code = EXIT_PARSE


class ManifestParseError(ParseFailure):
    """Manifest file cannot be parsed."""

    def __init__(self, path: str, detail: str, line: Optional[int] = None) -> None:
        """Initialize ManifestParseError."""
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"Cannot parse manifest {where}: {detail}")


class ConfigParseError(ParseFailure):
    """Parameter file cannot be parsed."""

    def __init__(self, path: str, detail: str) -> None:
        """Initialize ConfigParseError."""
        super().__init__(f"Cannot parse config {path}: {detail}")


class CapacityExceededError(HeanaError):
    """More output tiles in flight than BPCA capacitors."""

    exit_code = EXIT_CAPACITY

    def __init__(self, required: int, p: int, layer: Optional[str] = None) -> None:
        """Initialize CapacityExceededError."""
        self.required = required
        self.p = p
        self.layer = layer
        where = f"layer '{layer}': " if layer else ""
        super().__init__(
            f"{where}{required} output tiles in flight exceed p={p} capacitors "
            f"(requires p >= {required})"
        )

    def for_layer(self, layer: str) -> CapacityExceededError:
        """Return a copy naming the offending layer."""
        return CapacityExceededError(self.required, self.p, layer=layer)


class NoSolutionError(HeanaError):
    """Link budget has no feasible operating point."""

    exit_code = EXIT_NO_SOLUTION

    def __init__(self, bits: float, datarate: float, ceiling_w: float) -> None:
        """Initialize NoSolutionError."""
        super().__init__(
            f"{bits}-bit precision at {datarate:g} S/s is unreachable "
            f"below {ceiling_w:g} W"
        )


class AccumulatorOverflowError(HeanaError):
    """GEMM result exceeds the accumulator width."""

    def __init__(self, bits: int) -> None:
        """Initialize AccumulatorOverflowError."""
        super().__init__(f"GEMM result does not fit the {bits}-bit accumulator")


class FunctionalMismatchError(HeanaError):
    """Functional simulation disagrees with the exact oracle."""

    def __init__(self, layer: str, mismatches: int) -> None:
        """Initialize FunctionalMismatchError."""
        super().__init__(
            f"Layer '{layer}': {mismatches} outputs differ from the exact GEMM"
        )
