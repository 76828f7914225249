"""Scenario configuration: shipped defaults and TOML config files.

A scenario bundles everything one run needs: both radar parameter sets,
the aircraft's initial state, timing, the network configuration, and the
master seed. The shipped defaults describe an airport with two
surveillance radars on the ground at (0,0) and (100,0) m watching an
aircraft gliding in from (-600, 100) m at 10 m/s toward the runway.

Config files are TOML with sections mirroring the parameter groups.
Unknown keys are rejected. Antenna gains may be given either linear
(`g_t`) or in dB (`g_t_db`); a dB value is converted at parse time.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .kinematics import AircraftState
from .network import NetworkConfig
from .radar import RadarParams

__all__ = ["ScenarioConfig", "default_config", "load_config", "parse_config"]


@dataclass(frozen=True)
class ScenarioConfig:
    radar1: RadarParams
    radar2: RadarParams
    aircraft: AircraftState
    sigma_w: float = 0.0          # process-noise std, m/s^2
    sample_period: float = 0.1    # s
    duration: float = 60.0        # s
    network: NetworkConfig = field(default_factory=NetworkConfig)
    seed: int = 42
    output_dir: str = "out"
    noise_scale: float = 1.0      # test hook: 0 forces exact measurements
    e_max_x: float | None = None  # None: derived as 5x the largest analytic
    e_max_y: float | None = None  # per-axis error std at the starting point

    def __post_init__(self) -> None:
        if self.radar1.position == self.radar2.position:
            raise ConfigError("radar positions must be distinct")
        if not (self.duration > 0 and self.sample_period > 0):
            raise ConfigError("duration and sample_period must be positive")
        if self.duration / self.sample_period < 10:
            raise ConfigError("duration/sample_period must yield at least 10 samples")
        if self.sigma_w < 0:
            raise ConfigError("sigma_w must be >= 0")
        if self.noise_scale < 0:
            raise ConfigError("noise_scale must be >= 0")

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.duration / self.sample_period + 1e-9)) + 1


def _default_radar(position: tuple[float, float]) -> RadarParams:
    return RadarParams(
        p_t=300.0,
        g_t=100.0,          # 20 dB
        g_r=100.0,          # 20 dB
        wavelength=0.03188,
        rcs=6.0,
        bandwidth=1e8,
        loss=1e-17,
        aperture=10.0,
        position=position,
        noise_rms=10.0,
    )


def default_config(**overrides: Any) -> ScenarioConfig:
    """The shipped default scenario; keyword overrides replace top-level fields."""
    cfg = ScenarioConfig(
        radar1=_default_radar((0.0, 0.0)),
        radar2=_default_radar((100.0, 0.0)),
        aircraft=AircraftState(x=-600.0, y=100.0, vx=10.0, vy=-1.0),
    )
    return replace(cfg, **overrides) if overrides else cfg


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _check_keys(section: str, data: Mapping[str, Any], allowed: set[str]) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")


def _parse_radar(section: str, data: Mapping[str, Any], base: RadarParams) -> RadarParams:
    plain = {"p_t", "g_t", "g_r", "wavelength", "rcs", "bandwidth", "loss",
             "aperture", "position", "noise_rms"}
    _check_keys(section, data, plain | {"g_t_db", "g_r_db"})
    kwargs: dict[str, Any] = {}
    for gain in ("g_t", "g_r"):
        if gain in data and f"{gain}_db" in data:
            raise ConfigError(f"[{section}] sets both {gain} and {gain}_db")
        if f"{gain}_db" in data:
            kwargs[gain] = _db_to_linear(float(data[f"{gain}_db"]))
        elif gain in data:
            kwargs[gain] = float(data[gain])
    for key in plain - {"g_t", "g_r", "position"}:
        if key in data:
            kwargs[key] = float(data[key])
    if "position" in data:
        pos = data["position"]
        if not (isinstance(pos, (list, tuple)) and len(pos) == 2):
            raise ConfigError(f"[{section}] position must be a 2-element array")
        kwargs["position"] = (float(pos[0]), float(pos[1]))
    return replace(base, **kwargs)


def _parse_simple(section: str, data: Mapping[str, Any], base: Any, fields_: dict[str, type]) -> Any:
    _check_keys(section, data, set(fields_))
    kwargs = {}
    for key, typ in fields_.items():
        if key in data:
            kwargs[key] = typ(data[key])
    return replace(base, **kwargs)


def parse_config(doc: Mapping[str, Any]) -> ScenarioConfig:
    """Build a ScenarioConfig from a parsed TOML document, over the defaults."""
    top_allowed = {"seed", "duration", "sample_period", "sigma_w", "output_dir",
                   "noise_scale", "aircraft", "radar1", "radar2", "network"}
    _check_keys("top level", doc, top_allowed)

    cfg = default_config()
    top: dict[str, Any] = {}
    for key, typ in (("seed", int), ("duration", float), ("sample_period", float),
                     ("sigma_w", float), ("output_dir", str), ("noise_scale", float)):
        if key in doc:
            top[key] = typ(doc[key])

    aircraft = cfg.aircraft
    if "aircraft" in doc:
        aircraft = _parse_simple("aircraft", doc["aircraft"], aircraft,
                                 {"x": float, "y": float, "vx": float, "vy": float})
    radar1 = _parse_radar("radar1", doc.get("radar1", {}), cfg.radar1)
    radar2 = _parse_radar("radar2", doc.get("radar2", {}), cfg.radar2)

    network = cfg.network
    e_max_x = e_max_y = None
    if "network" in doc:
        ndata = dict(doc["network"])
        _check_keys("network", ndata, {
            "n_in_per_channel", "n_out", "tau_syn", "learning_enabled",
            "reset_between_windows", "v_init", "calibration_grid",
            "calibration_windows", "calibration_discard", "neuron", "stdp", "codec",
        })
        neuron = network.neuron
        if "neuron" in ndata:
            neuron = _parse_simple("network.neuron", ndata.pop("neuron"), neuron,
                                   {"a": float, "b": float, "c": float, "d": float,
                                    "v_thresh": float})
        stdp = network.stdp
        if "stdp" in ndata:
            stdp = _parse_simple("network.stdp", ndata.pop("stdp"), stdp,
                                 {"a_plus": float, "a_minus": float, "tau_plus": float,
                                  "tau_minus": float, "w_min": float, "w_max": float})
        codec = network.codec
        if "codec" in ndata:
            cdata = dict(ndata.pop("codec"))
            _check_keys("network.codec", cdata, {
                "r_max", "window", "dt", "decode_gain", "zero_spikes_decode_to_zero",
                "r_out_max", "e_max_x", "e_max_y",
            })
            e_max_x = float(cdata.pop("e_max_x")) if "e_max_x" in cdata else None
            e_max_y = float(cdata.pop("e_max_y")) if "e_max_y" in cdata else None
            codec = replace(codec, **{k: (bool(v) if k == "zero_spikes_decode_to_zero" else float(v))
                                      for k, v in cdata.items()})
        nkwargs: dict[str, Any] = {"neuron": neuron, "stdp": stdp, "codec": codec}
        for key, typ in (("n_in_per_channel", int), ("n_out", int), ("tau_syn", float),
                         ("learning_enabled", bool), ("reset_between_windows", bool),
                         ("v_init", float), ("calibration_grid", int),
                         ("calibration_windows", int), ("calibration_discard", int)):
            if key in ndata:
                nkwargs[key] = typ(ndata[key])
        network = replace(network, **nkwargs)

    return replace(cfg, radar1=radar1, radar2=radar2, aircraft=aircraft,
                   network=network, e_max_x=e_max_x, e_max_y=e_max_y, **top)


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse a TOML scenario file."""
    p = Path(path)
    try:
        with p.open("rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {p}: {exc}") from exc
    return parse_config(doc)
