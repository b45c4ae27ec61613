# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from __future__ import annotations
from dataclasses import dataclass, field
import json
import logging
import math
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import numpy as np

from bandedge.constants import (
    CLEAN_R2,
    DEFAULT_OMEGA_MAX,
    DEFAULT_OMEGA_MIN,
    DEFAULT_OMEGA_STEPS,
    DEFAULT_SCAN_DENSITY,
    GUARD_BAND,
    ROOT_RTOL,
    TOUCH_SLOPE,
    Command,
    ModelKind,
    OutputFormat,
    Side,
    Target,
)
from bandedge.model.crystal import LayeredCrystal, build_crystal
from bandedge.model.emission import EmitterDistribution
from bandedge.utils.errors import ParseError, ValidationError
from bandedge.utils.log import Log
from bandedge.utils.results import Results

Window = Tuple[float, float]

# Keys a config document may carry besides "layers"; they mirror the command-line options
PARAMETER_KEYS = (
    "omega_min",
    "omega_max",
    "omega_steps",
    "x",
    "gap",
    "side",
    "window",
    "points",
    "shift",
    "dist",
    "model",
    "omega_c",
    "k0",
    "A",
    "target",
    "positions",
    "seed",
    "node",
)
LAYER_KEYS = ("n", "d")

JSON_COMMANDS = (Command.EDGE_FIT, Command.SENSITIVITY)


@dataclass(frozen=True)
class NumericsConfig:
    scan_density: float = DEFAULT_SCAN_DENSITY
    root_rtol: float = ROOT_RTOL
    touch_slope: float = TOUCH_SLOPE
    clean_r2: float = CLEAN_R2
    guard_band: float = GUARD_BAND

    def __post_init__(self) -> None:
        for name in ("scan_density", "root_rtol", "touch_slope", "guard_band"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValidationError(name.replace("_", "-"), f"must be positive, got {value!r}")
        if self.root_rtol < 4 * np.finfo(float).eps:
            raise ValidationError("root-rtol", f"must be at least {4 * np.finfo(float).eps!r}")
        if not 0.0 <= self.clean_r2 <= 1.0:
            raise ValidationError("clean-r2", f"must lie in [0, 1], got {self.clean_r2!r}")


@dataclass(frozen=True)
class RunSpec:
    crystal: Optional[LayeredCrystal] = None
    omega_min: float = DEFAULT_OMEGA_MIN
    omega_max: float = DEFAULT_OMEGA_MAX
    omega_steps: int = DEFAULT_OMEGA_STEPS
    x: float = 0.0
    gap: int = 1
    side: Side = Side.LOWER
    window: Optional[Window] = None
    points: Optional[int] = None
    shift: Optional[float] = None
    dist: EmitterDistribution = field(default_factory=EmitterDistribution.uniform)
    model: ModelKind = ModelKind.ISOTROPIC
    omega_c: float = 1.0
    k0: float = 1.0
    A: Optional[float] = None
    target: Target = Target.DOS
    positions: int = 0
    seed: int = 0
    node: int = 1
    explicit: Tuple[str, ...] = ()

    def omega_grid(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.omega_steps)

    def is_explicit(self, name: str) -> bool:
        """Whether `name` came from the document or the command line rather than a default."""
        return name in self.explicit


@dataclass
class Configuration(object):
    logger: Union[Log, logging.Logger]
    cmd: Command
    spec: RunSpec
    numerics: NumericsConfig
    results: Results
    show_progress_bar: bool = True


def parse_window(value: Union[str, Window]) -> Window:
    """Relative detuning window from "lo:hi"."""
    if isinstance(value, str):
        parts = value.split(":")
        if len(parts) != 2:
            raise ValidationError("window", f"expected 'lo:hi', got {value!r}")
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError:
            raise ValidationError("window", f"bounds must be numbers, got {value!r}")
    else:
        try:
            lo, hi = (float(v) for v in value)
        except (TypeError, ValueError):
            raise ValidationError("window", f"expected two numbers, got {value!r}")
    if not (0.0 < lo < hi and math.isfinite(hi)):
        raise ValidationError("window", f"must satisfy 0 < lo < hi, got {lo!r}:{hi!r}")
    return lo, hi


def parse_distribution(value: Union[str, EmitterDistribution]) -> EmitterDistribution:
    """delta:<x0> | uniform | gauss:<x0>:<sigma>"""
    if isinstance(value, EmitterDistribution):
        return value
    if not isinstance(value, str):
        raise ValidationError("dist", f"expected a string, got {value!r}")
    kind, *args = value.split(":")
    try:
        numbers = [float(a) for a in args]
    except ValueError:
        raise ValidationError("dist", f"parameters must be numbers, got {value!r}")
    if not all(math.isfinite(a) for a in numbers):
        raise ValidationError("dist", f"parameters must be finite, got {value!r}")

    if kind == "delta" and len(numbers) == 1:
        return EmitterDistribution.delta(numbers[0])
    if kind == "uniform" and not numbers:
        return EmitterDistribution.uniform()
    if kind == "gauss" and len(numbers) == 2:
        return EmitterDistribution.gauss(numbers[0], numbers[1])
    raise ValidationError("dist", f"expected delta:<x0>, uniform or gauss:<x0>:<sigma>, got {value!r}")


def _number(path: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ValidationError(path, f"must be finite, got {value!r}")
    return float(value)


def _integer(path: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValidationError(path, f"expected an integer, got {value!r}")
    return int(value)


def _choice(path: str, enum: type, value: Any):
    if isinstance(value, enum):
        return value
    try:
        return enum(value)
    except ValueError:
        raise ValidationError(path, f"expected one of {[e.value for e in enum]}, got {value!r}")


def _layers(raw: Any) -> LayeredCrystal:
    if not isinstance(raw, list):
        raise ValidationError("layers", f"expected a list, got {raw!r}")
    if not raw:
        raise ValidationError("layers", "at least one layer is required")

    pairs = []
    for i, entry in enumerate(raw):
        path = f"layers[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError(path, f"expected an object with keys {list(LAYER_KEYS)}, got {entry!r}")
        unknown = sorted(set(entry) - set(LAYER_KEYS))
        if unknown:
            raise ValidationError(f"{path}.{unknown[0]}", "unknown key")
        for key in LAYER_KEYS:
            if key not in entry:
                raise ValidationError(f"{path}.{key}", "missing")
        n = _number(f"{path}.n", entry["n"])
        d = _number(f"{path}.d", entry["d"])
        if n < 1.0:
            raise ValidationError(f"{path}.n", f"refractive index must be at least 1, got {n!r}")
        if d <= 0.0:
            raise ValidationError(f"{path}.d", f"thickness must be positive, got {d!r}")
        pairs.append((n, d))
    return build_crystal(pairs)


def _load_document(document: str) -> Dict[str, Any]:
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno)
    if not isinstance(raw, dict):
        raise ParseError("the top level must be an object", 1, 1)
    unknown = sorted(set(raw) - {"layers", *PARAMETER_KEYS})
    if unknown:
        raise ValidationError(unknown[0], "unknown key")
    return raw


def parse_config(document: Optional[str], params: Optional[Mapping[str, Any]] = None) -> RunSpec:
    """Validated RunSpec from a JSON document; non-None `params` override document values."""
    raw = _load_document(document) if document is not None else {}
    values: Dict[str, Any] = {k: v for k, v in raw.items() if k != "layers"}
    values.update({k: v for k, v in (params or {}).items() if k in PARAMETER_KEYS and v is not None})

    spec: Dict[str, Any] = {"explicit": tuple(sorted(values))}
    if "layers" in raw:
        spec["crystal"] = _layers(raw["layers"])

    for name in ("omega_min", "omega_max", "x", "omega_c", "k0", "A", "shift"):
        if name in values:
            spec[name] = _number(name, values[name])
    for name in ("omega_steps", "gap", "points", "positions", "seed", "node"):
        if name in values:
            spec[name] = _integer(name, values[name])
    if "side" in values:
        spec["side"] = _choice("side", Side, values["side"])
    if "target" in values:
        spec["target"] = _choice("target", Target, values["target"])
    if "model" in values:
        spec["model"] = _choice("model", ModelKind, values["model"])
    if "window" in values:
        spec["window"] = parse_window(values["window"])
    if "dist" in values:
        spec["dist"] = parse_distribution(values["dist"])

    result = RunSpec(**spec)
    _validate(result)
    return result


def _validate(spec: RunSpec) -> None:
    if spec.omega_min < 0.0:
        raise ValidationError("omega_min", f"must be nonnegative, got {spec.omega_min!r}")
    if not spec.omega_max > spec.omega_min:
        raise ValidationError("omega_max", f"must exceed omega_min={spec.omega_min!r}, got {spec.omega_max!r}")
    if spec.omega_steps < 2:
        raise ValidationError("omega_steps", f"must be at least 2, got {spec.omega_steps!r}")
    for name in ("gap", "node"):
        if getattr(spec, name) < 1:
            raise ValidationError(name, f"must be at least 1, got {getattr(spec, name)!r}")
    if spec.points is not None and spec.points < 2:
        raise ValidationError("points", f"must be at least 2, got {spec.points!r}")
    if spec.positions < 0:
        raise ValidationError("positions", f"must be nonnegative, got {spec.positions!r}")
    if spec.seed < 0:
        raise ValidationError("seed", f"must be nonnegative, got {spec.seed!r}")
    for name in ("omega_c", "k0"):
        if not getattr(spec, name) > 0.0:
            raise ValidationError(name, f"must be positive, got {getattr(spec, name)!r}")
    if spec.A is not None and not spec.A > 0.0:
        raise ValidationError("A", f"must be positive, got {spec.A!r}")


def build_config(cmd: Command, **kwargs: Optional[Any]) -> Configuration:
    # configure logger
    logger = Log(kwargs.get("verbose"))

    document = None
    if path := kwargs.get("config"):
        try:
            with open(path, "r", encoding="utf-8") as config_file:
                document = config_file.read()
        except OSError as e:
            raise ValidationError("config", f"cannot read {path}: {e}")
    spec = parse_config(document, kwargs)
    if spec.crystal is None and cmd != Command.MODELS:
        raise ValidationError("config", f"the {cmd.value} command needs a document with 'layers'")

    numerics = NumericsConfig(
        scan_density=_or_default(kwargs, "scan_density", DEFAULT_SCAN_DENSITY),
        root_rtol=_or_default(kwargs, "root_rtol", ROOT_RTOL),
        touch_slope=_or_default(kwargs, "touch_slope", TOUCH_SLOPE),
        clean_r2=_or_default(kwargs, "clean_r2", CLEAN_R2),
        guard_band=_or_default(kwargs, "guard_band", GUARD_BAND),
    )

    # determine where results go
    primary = OutputFormat.JSON if cmd in JSON_COMMANDS else OutputFormat.CSV
    results = Results(csv_path=kwargs.get("out"), json_path=kwargs.get("json_path"), primary=primary)

    show_progress_bar = kwargs.get("show_progress_bar")
    return Configuration(
        logger=logger,
        cmd=cmd,
        spec=spec,
        numerics=numerics,
        results=results,
        show_progress_bar=True if show_progress_bar is None else show_progress_bar,
    )


def _or_default(kwargs: Mapping[str, Any], key: str, default: Any) -> Any:
    value = kwargs.get(key)
    return default if value is None else value
