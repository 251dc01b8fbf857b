# Copyright (c) 2024-present, HEANA-Sim Authors. All rights reserved.

"""Run configuration and parameter-file loading."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar, Union

import yaml
from pydantic import BaseModel, Field, ValidationError

from heana.enums import Architecture, Dataflow
from heana.errors import ConfigParseError, InvalidConfigError, NoSolutionError
from heana.logging import logger
from heana.modules.dataflow import DEFAULT_CAPACITORS, DpuConfig
from heana.modules.linkbudget import POWER_CEILING_W, max_n
from heana.modules.perfmodel import AcceleratorConfig, area_scale
from heana.schema.config import LinkBudgetParams, PeripheralModel
from heana.utils.compat import model_parse
from heana.utils.merge import merge_dict
from heana.utils.validate import describe_validation_error, validate_datarate

DATA_DIR = Path(__file__).resolve().parents[2] / "data"
LINKBUDGET_FILE = DATA_DIR / "linkbudget.yaml"
PERIPHERALS_FILE = DATA_DIR / "peripherals.yaml"

_ModelT = TypeVar("_ModelT", bound=BaseModel)
PathLike = Union[str, Path]


class RunConfig(BaseModel):
    """Everything one simulator run needs besides the workload."""

    arch: Architecture = Architecture.HEANA
    dataflow: Dataflow = Dataflow.OS
    datarate_gsps: float = 1.0
    bits: int = Field(default=4, ge=1, le=16)
    batch: Optional[int] = Field(default=None, ge=1)
    n: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = Field(default=None, ge=1)
    p: int = Field(default=DEFAULT_CAPACITORS, ge=1)
    dpu_count: Optional[int] = Field(default=None, ge=1)
    params_path: Optional[Path] = None
    peripherals_path: Optional[Path] = None
    seed: int = 0

    @property
    def datarate(self) -> float:
        """Datarate in symbols per second."""
        return validate_datarate(self.datarate_gsps)


def _read_yaml(path: PathLike) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(str(path), exc.strerror or str(exc)) from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigParseError(str(path), str(exc).splitlines()[0]) from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigParseError(str(path), "top level must be a mapping")
    return data


def _load_layered(
    model: Type[_ModelT], defaults: Path, override: Optional[PathLike]
) -> _ModelT:
    data = _read_yaml(defaults)
    if override is not None:
        data = merge_dict(data, _read_yaml(override))
    try:
        return model_parse(model, data)
    except ValidationError as exc:
        loc, msg = describe_validation_error(exc)[0]
        where = ".".join(str(part) for part in loc)
        source = override or defaults
        raise InvalidConfigError(f"{source}: {where}: {msg}") from exc


def load_params(path: Optional[PathLike] = None) -> LinkBudgetParams:
    """Packaged link-budget constants, overridden by ``path`` if given."""
    return _load_layered(LinkBudgetParams, LINKBUDGET_FILE, path)


def load_peripherals(path: Optional[PathLike] = None) -> PeripheralModel:
    """Packaged peripheral costs, overridden by ``path`` if given."""
    return _load_layered(PeripheralModel, PERIPHERALS_FILE, path)


def _supported_n(
    bits: int, datarate: float, params: LinkBudgetParams, arch: Architecture
) -> int:
    n = max_n(bits, datarate, params, arch).N_max
    if n < 1:
        raise NoSolutionError(bits, datarate, POWER_CEILING_W)
    return n


def reference_accelerator(
    params: LinkBudgetParams, peripherals: PeripheralModel
) -> AcceleratorConfig:
    """The design whose total DPU area every other design matches."""
    ref = peripherals.area
    n = _supported_n(
        ref.reference_bits, ref.reference_datarate, params, ref.reference_arch
    )
    return AcceleratorConfig(
        dpu=DpuConfig(
            N=n, M=n, datarate=ref.reference_datarate, arch=ref.reference_arch
        ),
        dpu_count=ref.reference_dpu_count,
        peripherals=peripherals,
        laser_power_dbm=params.P_Laser,
    )


def build_dpu(run: RunConfig, params: LinkBudgetParams) -> DpuConfig:
    """DPU of ``run``; N comes from the link budget unless given."""
    n = run.n or _supported_n(run.bits, run.datarate, params, run.arch)
    return DpuConfig(
        N=n, M=run.m or n, p=run.p, datarate=run.datarate, arch=run.arch
    )


def build_accelerator(
    run: RunConfig,
    params: Optional[LinkBudgetParams] = None,
    peripherals: Optional[PeripheralModel] = None,
) -> AcceleratorConfig:
    """Size the DPU from the link budget and the mesh from the area model.

    Explicit ``n``/``m``/``dpu_count`` in ``run`` win over derived values.
    """
    params = params or load_params(run.params_path)
    peripherals = peripherals or load_peripherals(run.peripherals_path)
    dpu = build_dpu(run, params)
    if run.dpu_count is not None:
        dpu_count = run.dpu_count
    else:
        reference = reference_accelerator(params, peripherals)
        dpu_count = area_scale(reference, [dpu])[0]
    logger.debug(
        "%s @ %g GS/s: N=%d M=%d p=%d, %d DPUs",
        run.arch.label,
        run.datarate_gsps,
        dpu.N,
        dpu.M,
        dpu.p,
        dpu_count,
    )
    return AcceleratorConfig(
        dpu=dpu,
        dpu_count=dpu_count,
        peripherals=peripherals,
        laser_power_dbm=params.P_Laser,
    )
