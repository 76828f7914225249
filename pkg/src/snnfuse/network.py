"""Two-layer spiking network that fuses the two radars' error signals.

Each axis (x, y) has its own feedforward subnetwork: two input channels
(one per radar) of Poisson encoders, fully connected to one output
population of Izhikevich neurons. A window of input spikes is run per
radar sample; the output population's spike counts decode to one fused
error per axis.

Decoding relies on a startup calibration: the drive-to-rate transfer of
each subnetwork is measured on a grid of input values and its
piecewise-linear inverse becomes the decoder's rate normalization.

Membrane state is re-initialized at each window boundary by default, so
every radar sample is decoded by an identical, stateless trial; set
reset_between_windows=False to carry membrane state across windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _engine
from .codec import CodecParams, SaturationCounter, normalize_error, poisson_encode, rate_decode, input_current
from .errors import ConfigError, NumericError
from .neuron import NeuronParams, NeuronState, apply_reset, rk4_step
from .plasticity import StdpParams, SynapseMatrix, on_spike_pair_update
from .seeding import TAG_CALIBRATION, derive_rng

__all__ = [
    "NetworkConfig",
    "NetworkState",
    "WindowTrace",
    "build_network",
    "synaptic_current_step",
    "calibrate_network",
    "run_window",
]

AXES = (0, 1)  # 0 = x, 1 = y


@dataclass(frozen=True)
class NetworkConfig:
    n_in_per_channel: int = 20
    n_out: int = 80
    tau_syn: float = 5.0            # ms
    neuron: NeuronParams = field(default_factory=NeuronParams)
    stdp: StdpParams = field(default_factory=StdpParams)
    codec: CodecParams = field(default_factory=lambda: CodecParams(e_max=1.0))
    learning_enabled: bool = False
    reset_between_windows: bool = True
    v_init: float = -65.0
    # calibration of the decode transfer
    calibration_grid: int = 9
    calibration_windows: int = 32
    calibration_discard: int = 2

    def __post_init__(self) -> None:
        if self.n_in_per_channel < 1 or self.n_out < 1:
            raise ConfigError("population sizes must be at least 1")
        if not self.tau_syn > 0:
            raise ConfigError("tau_syn must be positive")
        if self.calibration_grid < 3:
            raise ConfigError("calibration grid needs at least 3 points")
        if self.calibration_windows <= self.calibration_discard:
            raise ConfigError("calibration_windows must exceed calibration_discard")

    @property
    def n_in_total(self) -> int:
        return 2 * self.n_in_per_channel


@dataclass
class WindowTrace:
    """Diagnostics of one run_window call."""

    spike_counts: np.ndarray            # (2, n_out) int64
    weight_mean_abs_delta: np.ndarray   # (2,)
    saturated: np.ndarray               # (2,) saturation events this window
    rasters: tuple | None = None        # ((2*n_in, steps) uint8 per axis) when kept

    @property
    def total_spikes(self) -> np.ndarray:
        return self.spike_counts.sum(axis=1)


@dataclass
class NetworkState:
    cfg: NetworkConfig
    synapses: list[SynapseMatrix]       # per axis
    codecs: list[CodecParams]           # per axis, e_max resolved
    v: np.ndarray                       # (2, n_out) membrane potential
    u: np.ndarray                       # (2, n_out) recovery variable
    i_syn: np.ndarray                   # (2, n_out) synaptic current accumulator
    saturation: list[SaturationCounter]
    t_now: float = 0.0                  # network time, ms


def build_network(
    cfg: NetworkConfig,
    rng: np.random.Generator,
    codecs: tuple[CodecParams, CodecParams] | None = None,
) -> NetworkState:
    """Create both axis subnetworks with weights uniform in [0.25, 0.75]*w_max."""
    lo, hi = 0.25 * cfg.stdp.w_max, 0.75 * cfg.stdp.w_max
    synapses = [
        SynapseMatrix(w=rng.uniform(lo, hi, size=(cfg.n_in_total, cfg.n_out)))
        for _ in AXES
    ]
    if codecs is None:
        codecs = (cfg.codec, cfg.codec)
    if codecs[0].window != codecs[1].window or codecs[0].dt != codecs[1].dt:
        raise ConfigError("axis codecs must share the same window and dt")
    v0 = cfg.v_init
    u0 = cfg.neuron.b * v0
    return NetworkState(
        cfg=cfg,
        synapses=synapses,
        codecs=list(codecs),
        v=np.full((2, cfg.n_out), float(v0)),
        u=np.full((2, cfg.n_out), float(u0)),
        i_syn=np.zeros((2, cfg.n_out)),
        saturation=[SaturationCounter(), SaturationCounter()],
    )


def synaptic_current_step(
    i_syn: np.ndarray,
    dt: float,
    tau_syn: float,
    output_spikes_prev: np.ndarray | None = None,
) -> np.ndarray:
    """Exponential decay of the synaptic current accumulator.

    No recurrent wiring is configured, so no increments are applied and
    the accumulator decays toward zero; `output_spikes_prev` is accepted
    for the extension point but unused.
    """
    if not dt > 0:
        raise ConfigError(f"dt must be positive, got {dt}")
    if not tau_syn > 0:
        raise ConfigError(f"tau_syn must be positive, got {tau_syn}")
    return i_syn * math.exp(-dt / tau_syn)


def _reset_membrane(state: NetworkState, axis: int) -> None:
    state.v[axis].fill(state.cfg.v_init)
    state.u[axis].fill(state.cfg.neuron.b * state.cfg.v_init)


def _run_axis_window(
    state: NetworkState,
    axis: int,
    raster: np.ndarray,
    t0: float,
    learning: bool,
) -> np.ndarray:
    """Advance one axis through one window; returns per-neuron spike counts."""
    cfg = state.cfg
    syn = state.synapses[axis]
    counts = np.zeros(cfg.n_out, dtype=np.int64)
    if _engine.HAVE_NUMBA:
        fired = np.zeros(cfg.n_out, dtype=np.uint8)
        bad_step, bad_neuron = _engine.window_kernel(
            syn.w, state.v[axis], state.u[axis], state.i_syn[axis],
            syn.last_pre_spike, syn.last_post_spike,
            raster, t0, state.codecs[axis].dt,
            cfg.neuron.a, cfg.neuron.b, cfg.neuron.c, cfg.neuron.d, cfg.neuron.v_thresh,
            math.exp(-cfg.codec.dt / cfg.tau_syn),
            cfg.stdp.a_plus, cfg.stdp.a_minus, cfg.stdp.tau_plus, cfg.stdp.tau_minus,
            cfg.stdp.w_min, cfg.stdp.w_max,
            learning, counts, fired,
        )
        if bad_step >= 0:
            raise NumericError(
                f"neuron overflow on axis {axis}: neuron {bad_neuron} at window step {bad_step}"
            )
    else:
        _run_window_reference(state, axis, raster, t0, learning, counts)
    return counts


def _run_window_reference(
    state: NetworkState,
    axis: int,
    raster: np.ndarray,
    t0: float,
    learning: bool,
    counts: np.ndarray,
) -> None:
    """The window loop composed from the public module operations."""
    cfg = state.cfg
    syn = state.synapses[axis]
    dt = state.codecs[axis].dt
    ns = NeuronState(v=state.v[axis], u=state.u[axis])
    i_syn = state.i_syn[axis]
    for k in range(raster.shape[1]):
        t = t0 + k * dt
        column = raster[:, k]
        current = input_current(syn.w, column) + i_syn
        try:
            ns = rk4_step(ns, current, dt, cfg.neuron)
        except NumericError as exc:
            raise NumericError(f"neuron overflow on axis {axis} at window step {k}: {exc}") from exc
        ns = apply_reset(ns, cfg.neuron)
        i_syn = synaptic_current_step(i_syn, dt, cfg.tau_syn)
        fired_idx = np.nonzero(ns.fired)[0]
        counts[fired_idx] += 1
        if learning:
            pre_idx = np.nonzero(column)[0]
            on_spike_pair_update(syn, pre_idx, fired_idx, t, cfg.stdp)
    state.v[axis] = np.asarray(ns.v, dtype=float)
    state.u[axis] = np.asarray(ns.u, dtype=float)
    state.i_syn[axis] = np.asarray(i_syn, dtype=float)


def _encode_pair(
    state: NetworkState, axis: int, e_r1: float, e_r2: float, rng: np.random.Generator
) -> np.ndarray:
    """Stacked raster for one axis: radar1 channel rows, then radar2 rows."""
    cfg = state.cfg
    codec = state.codecs[axis]
    counter = state.saturation[axis]
    v1 = normalize_error(e_r1, codec, counter)
    v2 = normalize_error(e_r2, codec, counter)
    r1 = poisson_encode(v1, cfg.n_in_per_channel, codec, rng)
    r2 = poisson_encode(v2, cfg.n_in_per_channel, codec, rng)
    return np.vstack([r1.s, r2.s])


def run_window(
    state: NetworkState,
    e_r1: tuple[float, float],
    e_r2: tuple[float, float],
    rng: np.random.Generator,
    keep_rasters: bool = False,
) -> tuple[tuple[float, float], WindowTrace]:
    """Fuse one (e_r1, e_r2) error pair through one encoding window.

    Returns the fused per-axis error (m) and a diagnostics trace. Raster
    draws consume `rng` in a fixed order: x-axis radar1, x-axis radar2,
    y-axis radar1, y-axis radar2.
    """
    cfg = state.cfg
    for axis in AXES:
        if not (math.isfinite(e_r1[axis]) and math.isfinite(e_r2[axis])):
            raise ConfigError(f"non-finite input errors: {e_r1}, {e_r2}")

    fused = [0.0, 0.0]
    counts_all = np.zeros((2, cfg.n_out), dtype=np.int64)
    w_delta = np.zeros(2)
    sat_before = np.array([c.count for c in state.saturation])
    rasters = []
    t0 = state.t_now
    for axis in AXES:
        raster = _encode_pair(state, axis, e_r1[axis], e_r2[axis], rng)
        if keep_rasters:
            rasters.append(raster)
        if cfg.reset_between_windows:
            _reset_membrane(state, axis)
        w_before = state.synapses[axis].w.copy() if cfg.learning_enabled else None
        counts = _run_axis_window(state, axis, raster, t0, cfg.learning_enabled)
        counts_all[axis] = counts
        if w_before is not None:
            w_delta[axis] = float(np.abs(state.synapses[axis].w - w_before).mean())
        fused[axis] = rate_decode(counts, state.codecs[axis])
    state.t_now = t0 + state.codecs[0].window
    sat_after = np.array([c.count for c in state.saturation])
    trace = WindowTrace(
        spike_counts=counts_all,
        weight_mean_abs_delta=w_delta,
        saturated=sat_after - sat_before,
        rasters=tuple(rasters) if keep_rasters else None,
    )
    return (fused[0], fused[1]), trace


def _measure_transfer(
    state: NetworkState, axis: int, master_seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Mean output rate at each grid value, on scratch state (no learning)."""
    cfg = state.cfg
    codec = state.codecs[axis]
    grid = np.linspace(0.0, 1.0, cfg.calibration_grid)
    rates = np.empty_like(grid)
    syn = state.synapses[axis]
    for gi, value in enumerate(grid):
        rng = derive_rng(master_seed, TAG_CALIBRATION, axis, gi)
        v = np.full(cfg.n_out, float(cfg.v_init))
        u = cfg.neuron.b * v.copy()
        i_syn = np.zeros(cfg.n_out)
        lp = np.full(cfg.n_in_total, -np.inf)
        lq = np.full(cfg.n_out, -np.inf)
        total = 0
        for w in range(cfg.calibration_windows):
            raster = poisson_encode(float(value), cfg.n_in_total, codec, rng).s
            counts = np.zeros(cfg.n_out, dtype=np.int64)
            if cfg.reset_between_windows:
                v.fill(cfg.v_init)
                u.fill(cfg.neuron.b * cfg.v_init)
            if _engine.HAVE_NUMBA:
                fired = np.zeros(cfg.n_out, dtype=np.uint8)
                bad_step, bad_neuron = _engine.window_kernel(
                    syn.w, v, u, i_syn, lp, lq, raster,
                    w * codec.window, codec.dt,
                    cfg.neuron.a, cfg.neuron.b, cfg.neuron.c, cfg.neuron.d, cfg.neuron.v_thresh,
                    math.exp(-codec.dt / cfg.tau_syn),
                    cfg.stdp.a_plus, cfg.stdp.a_minus, cfg.stdp.tau_plus, cfg.stdp.tau_minus,
                    cfg.stdp.w_min, cfg.stdp.w_max,
                    False, counts, fired,
                )
                if bad_step >= 0:
                    raise NumericError(f"overflow during calibration: neuron {bad_neuron}")
            else:
                scratch = NetworkState(
                    cfg=cfg, synapses=[syn, syn], codecs=list(state.codecs),
                    v=np.vstack([v, v]), u=np.vstack([u, u]),
                    i_syn=np.vstack([i_syn, i_syn]),
                    saturation=[SaturationCounter(), SaturationCounter()],
                )
                _run_window_reference(scratch, 0, raster, w * codec.window, False, counts)
                v, u, i_syn = scratch.v[0], scratch.u[0], scratch.i_syn[0]
            if w >= cfg.calibration_discard:
                total += int(counts.sum())
        n_eff = cfg.calibration_windows - cfg.calibration_discard
        rates[gi] = total / (cfg.n_out * n_eff * codec.window)
    return grid, rates


def calibrate_network(state: NetworkState, master_seed: int) -> None:
    """Measure each axis transfer and install it as the decoder normalization.

    The measured rate grid must be strictly increasing (a responsive,
    monotone subnetwork); otherwise the decode would not be invertible
    and the configuration is rejected.
    """
    for axis in AXES:
        grid, rates = _measure_transfer(state, axis, master_seed)
        if not np.all(np.diff(rates) > 0):
            raise ConfigError(
                f"axis {axis} calibration transfer is not strictly increasing "
                f"(rates {rates.tolist()}); the configured drive cannot be decoded"
            )
        state.codecs[axis] = state.codecs[axis].with_transfer(grid.tolist(), rates.tolist())
