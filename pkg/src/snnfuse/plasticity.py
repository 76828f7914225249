"""Spike-timing-dependent plasticity: window function and online updates.

The pairing convention is causal: delta_t = t_post - t_pre, and positive
delta_t (pre before post) potentiates. Updates are nearest-neighbour,
using only each neuron's most recent spike, applied at spike events and
clamped to [w_min, w_max].

Note that the default rates have a_minus > a_plus, so depression events
outweigh potentiation events of equal timing offset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ConfigError, DomainError

__all__ = ["StdpParams", "SynapseMatrix", "stdp_window", "on_spike_pair_update"]

# Pairing convention marker, recorded in run metadata.
DELTA_T_CONVENTION = "post_minus_pre"


@dataclass(frozen=True)
class StdpParams:
    a_plus: float = 0.1      # potentiation rate
    a_minus: float = 0.12    # depression rate
    tau_plus: float = 20.0   # ms
    tau_minus: float = 20.0  # ms
    w_min: float = 0.0
    w_max: float = 10.0

    def __post_init__(self) -> None:
        for name in ("a_plus", "a_minus", "tau_plus", "tau_minus"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"StdpParams.{name} must be positive")
        if not self.w_min < self.w_max:
            raise ConfigError(f"w_min ({self.w_min}) must be below w_max ({self.w_max})")


@dataclass
class SynapseMatrix:
    """Dense pre-by-post weight matrix with per-neuron last-spike times (ms).

    Last-spike times start at -inf, meaning "never fired"; exp of the
    resulting time differences is exactly zero, so unfired neurons never
    contribute to an update.
    """

    w: np.ndarray
    last_pre_spike: np.ndarray = field(default=None)  # type: ignore[assignment]
    last_post_spike: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        self.w = np.asarray(self.w, dtype=float)
        if self.w.ndim != 2:
            raise ConfigError(f"weight matrix must be 2-D, got shape {self.w.shape}")
        n_pre, n_post = self.w.shape
        if self.last_pre_spike is None:
            self.last_pre_spike = np.full(n_pre, -np.inf)
        if self.last_post_spike is None:
            self.last_post_spike = np.full(n_post, -np.inf)
        if self.last_pre_spike.shape != (n_pre,) or self.last_post_spike.shape != (n_post,):
            raise ConfigError("last-spike arrays do not match weight matrix dimensions")

    @property
    def n_pre(self) -> int:
        return self.w.shape[0]

    @property
    def n_post(self) -> int:
        return self.w.shape[1]


def stdp_window(delta_t: float, params: StdpParams) -> float:
    """Weight change for one spike pair separated by delta_t = t_post - t_pre."""
    if not math.isfinite(delta_t):
        # -inf arises from never-fired partners: no pairing, no change.
        if math.isnan(delta_t):
            raise DomainError("delta_t is NaN")
        return 0.0
    if delta_t > 0:
        return params.a_plus * math.exp(-delta_t / params.tau_plus)
    if delta_t < 0:
        return -params.a_minus * math.exp(delta_t / params.tau_minus)
    return 0.0


def on_spike_pair_update(
    syn: SynapseMatrix,
    pre_spikes: Iterable[int],
    post_spikes: Iterable[int],
    t: float,
    params: StdpParams,
) -> SynapseMatrix:
    """Apply nearest-neighbour updates for the spikes landing at time t.

    Every synapse into a spiking post-neuron is potentiated against the
    pre-neuron's recorded last spike; every synapse out of a spiking
    pre-neuron is depressed against the post-neuron's recorded last
    spike. Both rules read the spike times as they were before this
    event; the times of the spiking neurons are then advanced to t.
    """
    pre_idx = np.fromiter(pre_spikes, dtype=np.intp)
    post_idx = np.fromiter(post_spikes, dtype=np.intp)
    if pre_idx.size and (pre_idx.min() < 0 or pre_idx.max() >= syn.n_pre):
        raise IndexError(f"pre index out of range for {syn.n_pre} pre neurons")
    if post_idx.size and (post_idx.min() < 0 or post_idx.max() >= syn.n_post):
        raise IndexError(f"post index out of range for {syn.n_post} post neurons")
    finite_times = [x for x in (syn.last_pre_spike.max(), syn.last_post_spike.max()) if np.isfinite(x)]
    if finite_times and t < max(finite_times):
        raise DomainError(f"update time {t} precedes a recorded spike at {max(finite_times)}")

    if post_idx.size:
        # exp(-(t - (-inf))/tau) == 0: never-fired pre neurons drop out.
        dt_pair = t - syn.last_pre_spike
        pot = np.where(dt_pair > 0, params.a_plus * np.exp(-dt_pair / params.tau_plus), 0.0)
        syn.w[:, post_idx] += pot[:, None]
    if pre_idx.size:
        dt_pair = syn.last_post_spike - t
        dep = np.where(dt_pair < 0, params.a_minus * np.exp(dt_pair / params.tau_minus), 0.0)
        syn.w[pre_idx, :] -= dep[None, :]
    if post_idx.size or pre_idx.size:
        np.clip(syn.w, params.w_min, params.w_max, out=syn.w)
    syn.last_pre_spike[pre_idx] = t
    syn.last_post_spike[post_idx] = t
    return syn
