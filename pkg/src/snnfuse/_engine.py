"""Compiled inner loop for one encoding window.

The kernel advances the whole output population through all grid steps
of a window: weighted input summation, RK4 integration, threshold reset,
synaptic-current decay, and (optionally) nearest-neighbour STDP. It
performs, step for step, the same operation sequence the public module
functions perform; `network._run_window_reference` is that sequence
spelled out with the public ops, and an equivalence test holds the two
together.

numba is optional: without it the reference path is used (identical
semantics, slower).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def window_kernel(
    w,            # (n_pre, n_post) float64, mutated in place when learning
    v,            # (n_post,) float64, mutated
    u,            # (n_post,) float64, mutated
    i_syn,        # (n_post,) float64, mutated
    last_pre,     # (n_pre,) float64, mutated when learning
    last_post,    # (n_post,) float64, mutated when learning
    raster,       # (n_pre, n_steps) uint8
    t0,           # window start time, ms
    dt,           # grid step, ms
    a, b, c, d, v_thresh,
    syn_decay,    # exp(-dt/tau_syn)
    a_plus, a_minus, tau_plus, tau_minus, w_min, w_max,
    learning,     # bool
    counts,       # (n_post,) int64, zeroed by caller, accumulates spikes
    fired,        # (n_post,) uint8 scratch
):
    """Run one window. Returns (bad_step, bad_neuron); (-1, -1) when all finite."""
    n_pre, n_steps = raster.shape
    n_post = v.shape[0]
    sixth = dt / 6.0
    half = 0.5 * dt
    for k in range(n_steps):
        t = t0 + k * dt
        # integrate every output neuron with the current held over the step
        for j in range(n_post):
            acc = i_syn[j]
            for i in range(n_pre):
                if raster[i, k]:
                    acc += w[i, j]
            vv = v[j]
            uu = u[j]
            k1v = (0.04 * vv + 5.0) * vv + 140.0 - uu + acc
            k1u = a * (b * vv - uu)
            p = vv + half * k1v
            q = uu + half * k1u
            k2v = (0.04 * p + 5.0) * p + 140.0 - q + acc
            k2u = a * (b * p - q)
            p = vv + half * k2v
            q = uu + half * k2u
            k3v = (0.04 * p + 5.0) * p + 140.0 - q + acc
            k3u = a * (b * p - q)
            p = vv + dt * k3v
            q = uu + dt * k3u
            k4v = (0.04 * p + 5.0) * p + 140.0 - q + acc
            k4u = a * (b * p - q)
            vv = vv + sixth * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            uu = uu + sixth * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            if not (np.isfinite(vv) and np.isfinite(uu)):
                return k, j
            v[j] = vv
            u[j] = uu
        # reset pass, then synaptic-current decay
        for j in range(n_post):
            if v[j] > v_thresh:
                fired[j] = 1
                v[j] = c
                u[j] = u[j] + d
                counts[j] += 1
            else:
                fired[j] = 0
            i_syn[j] *= syn_decay
        if learning:
            any_pre = False
            for i in range(n_pre):
                if raster[i, k]:
                    any_pre = True
                    break
            any_post = False
            for j in range(n_post):
                if fired[j]:
                    any_post = True
                    break
            # potentiation first, both rules against pre-event spike times
            if any_post:
                for j in range(n_post):
                    if fired[j]:
                        for i in range(n_pre):
                            dtp = t - last_pre[i]
                            if dtp > 0:
                                w[i, j] += a_plus * np.exp(-dtp / tau_plus)
            if any_pre:
                for i in range(n_pre):
                    if raster[i, k]:
                        for j in range(n_post):
                            dtm = last_post[j] - t
                            if dtm < 0:
                                w[i, j] -= a_minus * np.exp(dtm / tau_minus)
            if any_pre or any_post:
                for i in range(n_pre):
                    for j in range(n_post):
                        if w[i, j] < w_min:
                            w[i, j] = w_min
                        elif w[i, j] > w_max:
                            w[i, j] = w_max
                for i in range(n_pre):
                    if raster[i, k]:
                        last_pre[i] = t
                for j in range(n_post):
                    if fired[j]:
                        last_post[j] = t
    return -1, -1
