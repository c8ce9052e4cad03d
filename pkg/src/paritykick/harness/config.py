"""
JSON run configuration: schema, defaults and line-aware validation errors.
"""
from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from ..model import (BathSpec, CatStateSpec, PhysicalConstants, build_bath, with_couplings,
                     without_zero_mode)

__all__ = ["ConfigError", "RunConfig", "DEFAULTS", "SCHEMA", "load_config", "parse_config"]

_number = {"type": "number"}
_pos = {"type": "number", "exclusiveMinimum": 0}
_range = {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "omega0": _pos,
        "gamma": _pos,
        "n_modes": {"type": "integer", "minimum": 3},
        "delta": {"anyOf": [_pos, {"type": "null"}]},
        "coupling_scale": {"type": "number", "minimum": 0},
        "temperature": {"type": "number", "minimum": 0},
        "temperatures": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
        "cycle_time": {"anyOf": [_pos, {"type": "null"}]},
        "kick_fraction": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "total_time": {"anyOf": [_pos, {"type": "null"}]},
        "cycle_order": {"enum": ["free-first", "kick-first"]},
        "zero_mode": {"enum": ["clamp", "drop"]},
        "override_horizon": {"type": "boolean"},
        "workers": {"type": "integer", "minimum": 1},
        "output_dir": {"type": ["string", "null"]},
        "constants": {
            "type": "object", "additionalProperties": False,
            "properties": {"hbar": _pos, "k_boltzmann": _pos},
        },
        "sweep": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "min": _pos, "max": _pos,
                "count": {"type": "integer", "minimum": 1},
                "spacing": {"enum": ["log", "linear"]},
                "units": {"enum": ["rescaled", "seconds"]},
            },
        },
        "cat": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "alpha0": {"anyOf": [_number, _range]},
                "phi": _number,
            },
        },
        "wigner": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "re_range": _range, "im_range": _range,
                "resolution": {"type": "integer", "minimum": 2},
                "cycles": {"anyOf": [
                    {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                    {"type": "null"}]},
                "mode": {"enum": ["kicked", "free"]},
            },
        },
        "plot": {
            "type": "object", "additionalProperties": False,
            "properties": {"y_scale": {"enum": ["linear", "log"]}},
        },
        "validate": {
            "type": "object", "additionalProperties": False,
            "properties": {"rk4_step_divisor": {"type": "number", "minimum": 1}},
        },
    },
}

DEFAULTS = {
    "omega0": 1e7,
    "gamma": 1e5,
    "n_modes": 201,
    "delta": None,
    "coupling_scale": 1.0,
    "temperature": 0.01,
    "temperatures": [0.01, 0.1, 1.0],
    "cycle_time": None,
    "kick_fraction": 1 / 7,
    "total_time": None,
    "cycle_order": "free-first",
    "zero_mode": "clamp",
    "override_horizon": False,
    "workers": 1,
    "output_dir": None,
    "constants": {"hbar": 1.054571817e-34, "k_boltzmann": 1.380649e-23},
    "sweep": {"min": 0.05, "max": 5.0, "count": 24, "spacing": "log", "units": "rescaled"},
    "cat": {"alpha0": 2.0, "phi": 0.0},
    "wigner": {"re_range": [-4.0, 4.0], "im_range": [-4.0, 4.0], "resolution": 101,
               "cycles": None, "mode": "kicked"},
    "plot": {"y_scale": "linear"},
    "validate": {"rk4_step_divisor": 16},
}

# reference cycle times used when the config leaves cycle_time unset
SCENARIO_CYCLE_TIME = {"heating": 157e-9, "decoherence": 78.5e-9, "wigner": 78.5e-9}


class ConfigError(ValueError):
    pass


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _locate(text, keys):
    """1-based line of the last key in `keys`, searching nested keys in order."""
    if not text:
        return None
    pos, line = 0, None
    for key in keys:
        if not isinstance(key, str):
            continue
        m = re.compile(r'"%s"\s*:' % re.escape(key)).search(text, pos)
        if m is None:
            break
        pos = m.end()
        line = text.count("\n", 0, m.start()) + 1
    return line


def _where(source, text, keys):
    line = _locate(text, keys)
    return f"{source}:{line}" if line else source


def _error_message(err, text, source):
    keys = list(err.absolute_path)
    if err.validator == "additionalProperties":
        allowed = set(err.schema.get("properties", {}))
        extras = sorted(k for k in err.instance if k not in allowed)
        keys.append(extras[0])
        msg = f"unknown key {extras[0]!r}"
    else:
        msg = err.message
    where = ".".join(str(k) for k in keys) or "<root>"
    return f"{_where(source, text, keys)}: {where}: {msg}"


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration; `raw` holds the merged JSON document."""

    raw: dict

    def __getattr__(self, name):
        try:
            return self.raw[name]
        except KeyError:
            raise AttributeError(name) from None

    @property
    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(**self.raw["constants"])

    @property
    def delta_value(self) -> float:
        return self.raw["delta"] if self.raw["delta"] is not None else self.raw["omega0"] / 100

    @property
    def total_time_value(self) -> float:
        t = self.raw["total_time"]
        return t if t is not None else 1 / self.raw["gamma"]

    def cycle_time_for(self, scenario: str) -> float:
        t = self.raw["cycle_time"]
        return t if t is not None else SCENARIO_CYCLE_TIME[scenario]

    @property
    def cat_spec(self) -> CatStateSpec:
        a = self.raw["cat"]["alpha0"]
        alpha0 = complex(a[0], a[1]) if isinstance(a, list) else complex(a)
        return CatStateSpec(alpha0, float(self.raw["cat"]["phi"]))

    def bath(self) -> BathSpec:
        bath = build_bath(self.omega0, self.gamma, self.n_modes, self.delta_value)
        if self.coupling_scale != 1.0:
            bath = with_couplings(bath, bath.couplings * self.coupling_scale)
        if self.zero_mode == "drop":
            bath = without_zero_mode(bath)
        return bath


def parse_config(doc: dict | None = None, text: str | None = None,
                 source: str = "<config>") -> RunConfig:
    doc = {} if doc is None else doc
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise ConfigError("\n".join(_error_message(e, text, source) for e in errors))
    raw = _merge(DEFAULTS, doc)
    cfg = RunConfig(raw)
    try:
        bath = build_bath(cfg.omega0, cfg.gamma, cfg.n_modes, cfg.delta_value)
    except ValueError as exc:
        raise ConfigError(f"{_where(source, text, ['n_modes'])}: {exc}") from None
    sweep = raw["sweep"]
    if sweep["min"] > sweep["max"]:
        raise ConfigError(f"{_where(source, text, ['sweep', 'min'])}: sweep.min exceeds sweep.max")
    if cfg.total_time_value > bath.horizon * (1 + 1e-12) and not raw["override_horizon"]:
        raise ConfigError(
            f"{_where(source, text, ['total_time'])}: total_time "
            f"{cfg.total_time_value:.6g} s exceeds pi/delta = {bath.horizon:.6g} s; "
            "set override_horizon to run anyway")
    if raw["wigner"]["re_range"][0] >= raw["wigner"]["re_range"][1] or \
            raw["wigner"]["im_range"][0] >= raw["wigner"]["im_range"][1]:
        raise ConfigError(f"{_where(source, text, ['wigner'])}: wigner ranges must be increasing")
    return cfg


def load_config(path: str | Path | None, override_horizon: bool = False) -> RunConfig:
    """Read and validate a JSON config file; ``None`` gives the defaults."""
    if path is None:
        doc, text, source = {}, None, "<defaults>"
    else:
        path = Path(path)
        text = path.read_text()
        source = str(path)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if override_horizon and isinstance(doc, dict):
        doc = {**doc, "override_horizon": True}
    return parse_config(doc, text, source)
