#!/usr/bin/env python3
"""Izhikevich membrane dynamics under the shipped parameters.

Shows a tonic spike train at constant drive, the rate-vs-current curve,
and a quick self-convergence check of the RK4 integrator (the error
ratio between dt and dt/2 should be ~2^4).
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from snnfuse import NeuronParams, NeuronState, apply_reset, rk4_step

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)
params = NeuronParams()
DT = 0.5


def run(i_const, ms, v0=-65.0):
    s = NeuronState(v=v0, u=params.b * v0)
    vs, spikes = [], []
    for k in range(int(ms / DT)):
        s = rk4_step(s, i_const, DT, params)
        s = apply_reset(s, params)
        vs.append(30.0 if s.fired else s.v)  # draw the spike peak explicitly
        if s.fired:
            spikes.append(k * DT)
    return np.array(vs), spikes


# membrane trace: subthreshold at I=10, tonic at I=40
fig, axes = plt.subplots(2, 1, figsize=(9, 5), sharex=True)
for ax, drive in zip(axes, (10.0, 40.0)):
    vs, spikes = run(drive, 400.0)
    ax.plot(np.arange(len(vs)) * DT, vs, lw=0.8)
    ax.set_ylabel(f"v (mV)\nI = {drive:.0f}")
    print(f"I = {drive:4.0f}: {len(spikes):3d} spikes in 400 ms")
axes[1].set_xlabel("time (ms)")
fig.suptitle("Silent below rheobase, tonic above it")
fig.tight_layout()
fig.savefig(OUT / "membrane_traces.png", dpi=120)

# rate-vs-current transfer
drives = np.arange(0, 101, 5.0)
rates = [len(run(i, 2000.0)[1]) / 2.0 for i in drives]  # spikes per second... per 2 s
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(drives, rates, "o-")
ax.set_xlabel("constant input current")
ax.set_ylabel("firing rate (spikes/s)")
fig.tight_layout()
fig.savefig(OUT / "rate_vs_current.png", dpi=120)

# RK4 self-convergence on a subthreshold segment
def endpoint(dt):
    s = NeuronState(v=-65.0, u=-13.0)
    for _ in range(int(10.0 / dt)):
        s = rk4_step(s, 2.0, dt, params)
    return s.v

ref = endpoint(10.0 / 1280)
order = math.log2(abs(endpoint(0.5) - ref) / abs(endpoint(0.25) - ref))
print(f"RK4 self-convergence order over 10 ms: {order:.2f} (expect ~4)")
print(f"wrote {OUT / 'membrane_traces.png'} and {OUT / 'rate_vs_current.png'}")
