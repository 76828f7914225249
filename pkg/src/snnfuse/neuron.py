"""Izhikevich membrane dynamics with a classical fixed-step RK4 integrator.

    v' = 0.04 v^2 + 5 v + 140 - u + I
    u' = a (b v - u)
    if v > v_thresh:  v <- c, u <- u + d

All operations accept scalars or numpy arrays and broadcast elementwise,
so a whole population can be stepped in one call. Integration and reset
are separate: integrate one step, then apply the reset rule once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConfigError, NumericError

__all__ = ["NeuronParams", "NeuronState", "izhikevich_rhs", "rk4_step", "apply_reset"]

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class NeuronParams:
    """Izhikevich model constants.

    Note the default b = 0.01 gives a much weaker u-v coupling than the
    common regular-spiking setting of this model.
    """

    a: float = 0.02
    b: float = 0.01
    c: float = -55.0
    d: float = 6.0
    v_thresh: float = 30.0

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ConfigError(f"a must be positive, got {self.a}")
        if not self.v_thresh > self.c:
            raise ConfigError(f"v_thresh ({self.v_thresh}) must exceed reset c ({self.c})")


@dataclass
class NeuronState:
    """Membrane potential, recovery variable, and the fired flag of the last reset pass."""

    v: ArrayLike
    u: ArrayLike
    fired: ArrayLike = False


def izhikevich_rhs(v: ArrayLike, u: ArrayLike, i: ArrayLike, params: NeuronParams) -> tuple:
    """Time derivatives (dv/dt, du/dt) in mV/ms and 1/ms."""
    dv = (0.04 * v + 5.0) * v + 140.0 - u + i
    du = params.a * (params.b * v - u)
    return dv, du


def rk4_step(
    state: NeuronState,
    i: ArrayLike,
    dt: float,
    params: NeuronParams,
    dt_max: float = 1.0,
) -> NeuronState:
    """Advance (v, u) one classical RK4 step with input current held constant.

    The reset rule is NOT applied here; call apply_reset afterwards.
    dt is guarded against exceeding dt_max (stability); pass a larger
    dt_max to override.
    """
    if not dt > 0:
        raise ConfigError(f"dt must be positive, got {dt}")
    if dt > dt_max:
        raise ConfigError(f"dt = {dt} exceeds the stability guard dt_max = {dt_max}")

    v, u = state.v, state.u
    k1v, k1u = izhikevich_rhs(v, u, i, params)
    k2v, k2u = izhikevich_rhs(v + 0.5 * dt * k1v, u + 0.5 * dt * k1u, i, params)
    k3v, k3u = izhikevich_rhs(v + 0.5 * dt * k2v, u + 0.5 * dt * k2u, i, params)
    k4v, k4u = izhikevich_rhs(v + dt * k3v, u + dt * k3u, i, params)
    v_next = v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    u_next = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)

    if not (np.all(np.isfinite(v_next)) and np.all(np.isfinite(u_next))):
        raise NumericError(
            f"non-finite state after RK4 step: v={v_next!r}, u={u_next!r} (from v={v!r}, u={u!r}, i={i!r})"
        )
    return NeuronState(v=v_next, u=u_next, fired=state.fired)


def apply_reset(state: NeuronState, params: NeuronParams) -> NeuronState:
    """Apply the spike/reset rule: where v > v_thresh, v <- c and u <- u + d."""
    fired = np.greater(state.v, params.v_thresh)
    if np.ndim(state.v) == 0:
        if fired:
            return NeuronState(v=params.c, u=state.u + params.d, fired=True)
        return NeuronState(v=state.v, u=state.u, fired=False)
    v = np.where(fired, params.c, state.v)
    u = np.where(fired, state.u + params.d, state.u)
    return NeuronState(v=v, u=u, fired=fired)
