"""Scenario configuration files and shipped presets.

Configs are TOML with lowercase snake-case keys matching the scenario
and radio-model field names. Unknown keys are rejected, and every
validation error names the offending key path. The ``[metadata]``
section is free-form (receiver hardware notes and the like) and is
carried along without interpretation.
"""

from __future__ import annotations

import sys
from dataclasses import fields as dataclass_fields
from importlib import resources
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .controller import Policy
from .link_model import BLE, WISP, RadioModel
from .sim import MODES, MobilityTrace, Scenario

__all__ = [
    "ConfigError",
    "load_scenario",
    "parse_scenario",
    "resolve_scenario",
    "preset_names",
    "load_preset",
    "scenario_metadata",
]


class ConfigError(ValueError):
    """A configuration problem, with the offending key path."""


_SCALAR_KEYS = {
    "mode": str,
    "duration_s": int,
    "period_s": int,
    "frames_per_transmission": int,
    "payload_bytes_per_frame": int,
    "data_rate_bps": int,
    "seed": int,
    "repeats": int,
}
_SECTION_KEYS = ("policy", "wisp_model", "ble_model", "trace", "metadata")
_POLICY_KEYS = {"max_backoff": int, "literal_alg1": bool}
_MODEL_KEYS = {
    "id": str, "a": float, "r": float, "payload_bits": int,
    "overhead_bits": int, "energy_per_frame": float,
    "max_distance": float, "idle_power_uw": float,
}
_TRACE_KEYS = {"ble_distance_m": float, "segments": list}


def _require(data: dict[str, Any], allowed: dict[str, type], where: str) -> None:
    for key, value in data.items():
        path = f"{where}.{key}" if where else key
        if key not in allowed:
            raise ConfigError(f"{path}: unknown key")
        want = allowed[key]
        if want is float:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{path}: expected a number")
        elif not isinstance(value, want) or (want is int and isinstance(value, bool)):
            raise ConfigError(f"{path}: expected {want.__name__}")


def _parse_model(data: dict[str, Any], section: str,
                 default: RadioModel) -> RadioModel:
    _require(data, _MODEL_KEYS, section)
    values = {f.name: getattr(default, f.name)
              for f in dataclass_fields(RadioModel)}
    values.update(data)
    for key in ("a", "r", "energy_per_frame", "max_distance", "idle_power_uw"):
        values[key] = float(values[key])
    try:
        return RadioModel(**values)
    except ValueError as exc:
        raise ConfigError(f"{section}: {exc}") from exc


def _parse_trace(data: dict[str, Any]) -> MobilityTrace:
    _require(data, _TRACE_KEYS, "trace")
    if "segments" not in data:
        raise ConfigError("trace.segments: required")
    if "ble_distance_m" not in data:
        raise ConfigError("trace.ble_distance_m: required")
    segments = []
    for i, seg in enumerate(data["segments"]):
        if (not isinstance(seg, list) or len(seg) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                           for v in seg)):
            raise ConfigError(
                f"trace.segments[{i}]: expected a [start_s, distance_m] pair")
        segments.append((float(seg[0]), float(seg[1])))
    try:
        return MobilityTrace(tuple(segments), float(data["ble_distance_m"]))
    except ValueError as exc:
        raise ConfigError(f"trace: {exc}") from exc


def parse_scenario(data: dict[str, Any], origin: str = "config") -> Scenario:
    """Build a validated :class:`Scenario` from parsed TOML data."""
    scalars = {k: v for k, v in data.items() if k not in _SECTION_KEYS}
    _require(scalars, _SCALAR_KEYS, "")
    for key in _SECTION_KEYS:
        if key in data and not isinstance(data[key], dict):
            raise ConfigError(f"{key}: expected a section")

    policy_data = dict(data.get("policy", {}))
    _require(policy_data, _POLICY_KEYS, "policy")
    try:
        policy = Policy(**policy_data)
    except ValueError as exc:
        raise ConfigError(f"policy: {exc}") from exc

    if "trace" not in data:
        raise ConfigError("trace: required section")
    trace = _parse_trace(dict(data["trace"]))
    wisp = _parse_model(dict(data.get("wisp_model", {})), "wisp_model", WISP)
    ble = _parse_model(dict(data.get("ble_model", {})), "ble_model", BLE)

    if "mode" in scalars and scalars["mode"] not in MODES:
        raise ConfigError(f"mode: must be one of {MODES}")
    scenario = Scenario(trace=trace, wisp_model=wisp, ble_model=ble,
                        policy=policy, **scalars)
    try:
        scenario.validate()
    except ValueError as exc:
        raise ConfigError(f"{origin}: {exc}") from exc
    return scenario


def _read_toml(path: Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such config file") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario config file."""
    return parse_scenario(_read_toml(Path(path)), origin=str(path))


def _preset_dir():
    return resources.files(__package__) / "presets"


def preset_names() -> list[str]:
    """Names of the shipped scenario presets."""
    return sorted(p.name[:-len(".toml")] for p in _preset_dir().iterdir()
                  if p.name.endswith(".toml"))


def load_preset(name: str) -> Scenario:
    """Load a shipped preset by name."""
    path = _preset_dir() / f"{name}.toml"
    if not path.is_file():
        raise ConfigError(
            f"unknown preset {name!r} (available: {', '.join(preset_names())})")
    with path.open("rb") as fh:
        return parse_scenario(tomllib.load(fh), origin=f"preset {name}")


def resolve_scenario(ref: str) -> tuple[str, Scenario]:
    """Resolve a preset name or config file path to (name, scenario)."""
    if ref in preset_names():
        return ref, load_preset(ref)
    path = Path(ref)
    if path.is_file():
        return path.stem, load_scenario(path)
    raise ConfigError(
        f"{ref!r} is neither a preset ({', '.join(preset_names())}) "
        f"nor a config file")


def scenario_metadata(ref: str) -> dict[str, Any]:
    """The free-form [metadata] section of a preset or config file."""
    if ref in preset_names():
        with (_preset_dir() / f"{ref}.toml").open("rb") as fh:
            return dict(tomllib.load(fh).get("metadata", {}))
    return dict(_read_toml(Path(ref)).get("metadata", {}))
