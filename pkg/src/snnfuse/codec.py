"""Conversion between measurement errors and spike trains.

Encoding: an error e in [-e_max, +e_max] maps affinely onto [0, 1] and
drives independent Bernoulli draws with probability value * r_max * dt
per neuron per grid step (Poisson encoding).

Decoding: the population mean output rate is turned back into a value in
[0, 1] and pushed through the inverse of the affine input map. The rate
normalization is either a plain scale r_out_max (rate / r_out_max), or,
when a calibrated transfer table is present, the piecewise-linear
inverse of the measured drive-to-rate transfer. decode_gain scales the
decoded error about zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "CodecParams",
    "SaturationCounter",
    "SpikeRaster",
    "normalize_error",
    "poisson_encode",
    "rate_decode",
    "input_current",
]


@dataclass
class SaturationCounter:
    """Counts normalize_error inputs that fell outside [-e_max, +e_max]."""

    count: int = 0


@dataclass(frozen=True)
class CodecParams:
    e_max: float                 # full-scale error magnitude, m
    r_max: float = 2.0           # peak encoding rate, spikes/ms
    window: float = 100.0        # encoding window, ms
    dt: float = 0.5              # spike grid resolution, ms
    r_out_max: float = 1.0       # decode normalization rate, spikes/ms (no-table path)
    decode_gain: float = 0.75    # output gain about zero error
    zero_spikes_decode_to_zero: bool = False
    # Calibrated transfer: measured mean output rate at each normalized
    # drive value. When present, decode inverts this table instead of
    # dividing by r_out_max.
    transfer_values: tuple = ()
    transfer_rates: tuple = ()

    def __post_init__(self) -> None:
        if not self.e_max > 0:
            raise ConfigError(f"e_max must be positive, got {self.e_max}")
        if not (self.r_max > 0 and self.dt > 0 and self.window > 0):
            raise ConfigError("r_max, window and dt must be positive")
        if self.r_max * self.dt > 1.0 + 1e-12:
            raise ConfigError(
                f"r_max*dt = {self.r_max * self.dt} exceeds 1; per-step spike probability is invalid"
            )
        if self.window < 10.0 * self.dt:
            raise ConfigError(f"window ({self.window}) must be at least 10*dt ({10 * self.dt})")
        if not self.r_out_max > 0:
            raise ConfigError("r_out_max must be positive")
        if len(self.transfer_values) != len(self.transfer_rates):
            raise ConfigError("transfer table values and rates differ in length")
        if self.transfer_values:
            rates = np.asarray(self.transfer_rates, dtype=float)
            if not np.all(np.diff(rates) > 0):
                raise ConfigError("transfer table rates must be strictly increasing")

    @property
    def n_steps(self) -> int:
        return int(round(self.window / self.dt))

    def with_transfer(self, values: Sequence[float], rates: Sequence[float]) -> "CodecParams":
        from dataclasses import replace

        return replace(self, transfer_values=tuple(values), transfer_rates=tuple(rates))


@dataclass(frozen=True)
class SpikeRaster:
    """Binary spike matrix, neurons x timesteps, on a dt grid."""

    s: np.ndarray
    dt: float

    def __post_init__(self) -> None:
        s = np.asarray(self.s)
        if s.ndim != 2 or not np.isin(s, (0, 1)).all():
            raise ConfigError("raster must be a 2-D binary matrix")

    @property
    def n_neurons(self) -> int:
        return self.s.shape[0]

    @property
    def n_steps(self) -> int:
        return self.s.shape[1]


def normalize_error(e: float, params: CodecParams, counter: SaturationCounter | None = None) -> float:
    """Map an error in metres to [0, 1]; out-of-range inputs clamp and count."""
    if not math.isfinite(e):
        raise DomainError(f"error value must be finite, got {e}")
    value = (e + params.e_max) / (2.0 * params.e_max)
    if value < 0.0 or value > 1.0:
        if counter is not None:
            counter.count += 1
        value = min(max(value, 0.0), 1.0)
    return value


def poisson_encode(
    value: float,
    n_neurons: int,
    params: CodecParams,
    rng: np.random.Generator,
) -> SpikeRaster:
    """Bernoulli raster with per-step spike probability value * r_max * dt."""
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"value must lie in [0, 1], got {value}")
    if n_neurons < 1:
        raise ConfigError("n_neurons must be at least 1")
    p = value * params.r_max * params.dt
    s = (rng.random((n_neurons, params.n_steps)) < p).astype(np.uint8)
    return SpikeRaster(s=s, dt=params.dt)


def rate_decode(spike_counts: np.ndarray, params: CodecParams) -> float:
    """Decode per-output-neuron spike counts over one window into metres."""
    counts = np.asarray(spike_counts, dtype=float)
    if counts.ndim != 1 or counts.size == 0:
        raise DomainError("spike_counts must be a non-empty 1-D vector")
    total = counts.sum()
    if total == 0.0 and params.zero_spikes_decode_to_zero:
        return 0.0
    rate = total / (counts.size * params.window)  # spikes/ms, population mean
    if params.transfer_values:
        value = float(
            np.interp(rate, np.asarray(params.transfer_rates), np.asarray(params.transfer_values))
        )
    else:
        value = min(rate / params.r_out_max, 1.0)
    return params.decode_gain * (value - 0.5) * 2.0 * params.e_max


def input_current(weights: np.ndarray, raster_column: np.ndarray) -> np.ndarray:
    """External input current per post neuron: weighted sum of this step's spikes.

    `weights` is pre x post; `raster_column` is the binary spike vector of
    the pre population at one grid step.
    """
    w = np.asarray(weights, dtype=float)
    s = np.asarray(raster_column, dtype=float)
    if w.ndim != 2 or s.ndim != 1 or w.shape[0] != s.shape[0]:
        raise ConfigError(f"dimension mismatch: weights {w.shape} vs spikes {s.shape}")
    return s @ w
