#!/usr/bin/env python3
"""The STDP pairing window and a few online weight updates.

Positive pairing offsets (pre fires, then post) potentiate; negative
offsets depress. With the shipped rates the depression side is the
stronger one, which is why the shipped scenarios run with learning
disabled (see README).
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from snnfuse import StdpParams, SynapseMatrix, on_spike_pair_update, stdp_window

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)
params = StdpParams()

dts = np.linspace(-80, 80, 801)
fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(dts, [stdp_window(d, params) for d in dts])
ax.axhline(0, color="k", lw=0.5)
ax.axvline(0, color="k", lw=0.5)
ax.set_xlabel("spike pairing offset  t_post - t_pre  (ms)")
ax.set_ylabel("weight change")
fig.tight_layout()
fig.savefig(OUT / "stdp_window.png", dpi=120)
print(f"W(+20 ms) = {stdp_window(20.0, params):+.6f}   W(-20 ms) = {stdp_window(-20.0, params):+.6f}")

# a 1-pre, 1-post synapse walked through a causal and an anticausal pairing
syn = SynapseMatrix(w=np.array([[5.0]]))
print(f"start            w = {syn.w[0,0]:.4f}")
on_spike_pair_update(syn, [0], [], 10.0, params)   # pre fires at t=10
on_spike_pair_update(syn, [], [0], 30.0, params)   # post follows at t=30
print(f"pre->post +20 ms w = {syn.w[0,0]:.4f}  (potentiated)")
on_spike_pair_update(syn, [0], [], 50.0, params)   # pre again, 20 ms after post
print(f"post->pre -20 ms w = {syn.w[0,0]:.4f}  (depressed)")
print(f"wrote {OUT / 'stdp_window.png'}")
