"""Run configuration: paper-default parameters, JSON loading and dumping.

Sections mirror the model dataclasses.  Power-like quantities may be given in
dB/dBm (``*_dB``/``*_dBm``) or linear units; dumps always use linear units so
that ``load -> dump -> load`` is an exact fixed point.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional

from .bench import SweepSpec
from .channel import ChannelParams
from .errors import ConfigError
from .motor import MotorParams
from .objective import SystemConfig, db_to_linear, dbm_to_watt

ENV_CONFIG = "MA_EE_CONFIG"


@dataclass(frozen=True)
class SolverSettings:
    eps: float = 1e-9
    power_grid_size: int = 100_000

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if int(self.power_grid_size) != self.power_grid_size or self.power_grid_size < 2:
            raise ValueError("power_grid_size must be an integer >= 2")


@dataclass(frozen=True)
class RunConfig:
    motor: MotorParams = field(default_factory=MotorParams)
    channel: ChannelParams = field(default_factory=ChannelParams)
    system: SystemConfig = field(default_factory=SystemConfig)
    solver: SolverSettings = field(default_factory=SolverSettings)
    sweep: Optional[SweepSpec] = None
    seed_base: int = 0


# (dB key, linear key, converter)
_LOG_KEYS = {
    "channel": [("ref_pathloss_dB", "ref_pathloss", db_to_linear),
                ("noise_power_dBm", "noise_power", dbm_to_watt)],
    "system": [("P_max_dBm", "P_max", dbm_to_watt),
               ("P_s_dBm", "P_s", dbm_to_watt)],
}


def _section(doc: Dict[str, Any], name: str, cls):
    raw = doc.get(name, {})
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{name}: expected an object")
    raw = dict(raw)
    for db_key, lin_key, conv in _LOG_KEYS.get(name, []):
        if db_key in raw:
            if lin_key in raw:
                raise ConfigError(f"{name}.{db_key}: conflicts with {name}.{lin_key}")
            raw[lin_key] = conv(_number(raw.pop(db_key), f"{name}.{db_key}"))
    known = {f.name for f in fields(cls)}
    for key in raw:
        if key not in known:
            raise ConfigError(f"{name}.{key}: unknown key")
    return raw


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return value


def _build(cls, kwargs, name):
    try:
        return cls(**kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def config_from_dict(doc: Dict[str, Any]) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("<root>: expected an object")
    extra = set(doc) - {"motor", "channel", "system", "solver", "sweep", "seed_base"}
    if extra:
        raise ConfigError(f"{sorted(extra)[0]}: unknown key")

    motor = _build(MotorParams, _section(doc, "motor", MotorParams), "motor")
    channel = _build(ChannelParams, _section(doc, "channel", ChannelParams), "channel")
    sys_kw = _section(doc, "system", SystemConfig)
    if "array_len" in sys_kw and "init_pos" not in sys_kw:
        sys_kw["init_pos"] = _number(sys_kw["array_len"], "system.array_len") / 2
    system = _build(SystemConfig, sys_kw, "system")
    solver = _build(SolverSettings, _section(doc, "solver", SolverSettings), "solver")

    seed_base = doc.get("seed_base", 0)
    if isinstance(seed_base, bool) or not isinstance(seed_base, int):
        raise ConfigError(f"seed_base: expected an integer, got {seed_base!r}")

    sweep = None
    if doc.get("sweep") is not None:
        sw = doc["sweep"]
        if not isinstance(sw, dict):
            raise ConfigError("sweep: expected an object")
        sw = dict(sw)
        sw.setdefault("seed_base", seed_base)
        try:
            sweep = SweepSpec(**sw)
        except TypeError as exc:
            raise ConfigError(f"sweep: {exc}") from exc
    return RunConfig(motor, channel, system, solver, sweep, seed_base)


def load_config(path=None) -> RunConfig:
    """Load a JSON config; ``None`` falls back to ``$MA_EE_CONFIG`` then defaults."""
    if path is None:
        import os
        path = os.environ.get(ENV_CONFIG) or None
    if path is None:
        return RunConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not text.strip():
        return RunConfig()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_dict(doc)


def config_to_dict(cfg: RunConfig) -> Dict[str, Any]:
    doc = {
        "motor": asdict(cfg.motor),
        "channel": asdict(cfg.channel),
        "system": asdict(cfg.system),
        "solver": asdict(cfg.solver),
        "seed_base": cfg.seed_base,
    }
    if cfg.sweep is not None:
        sw = cfg.sweep
        doc["sweep"] = {
            "swept_param": sw.swept_param,
            "values": list(sw.values),
            "realizations": sw.realizations,
            "seed_base": sw.seed_base,
            "schemes": [s.value for s in sw.schemes],
        }
    return doc


def dump_config(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2, sort_keys=True)
