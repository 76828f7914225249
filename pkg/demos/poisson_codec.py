#!/usr/bin/env python3
"""Encoding errors as spike rasters and reading them back.

An error is normalized to [0, 1], expanded into Bernoulli spike trains,
and recovered from the population rate. The round-trip scatter narrows
as the population grows: rate coding averages its own noise away.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from snnfuse import CodecParams, normalize_error, poisson_encode, rate_decode

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

codec = CodecParams(e_max=0.02, r_max=0.2, dt=0.5, window=100.0, r_out_max=0.2, decode_gain=1.0)
rng = np.random.default_rng(2)

# a raster for a mid-positive error
raster = poisson_encode(normalize_error(0.01, codec), 20, codec, rng)
fig, ax = plt.subplots(figsize=(8, 3))
rows, cols = np.nonzero(raster.s)
ax.scatter(cols * codec.dt, rows, s=2, marker="|")
ax.set_xlabel("time in window (ms)")
ax.set_ylabel("encoder neuron")
ax.set_title("Poisson raster for e = +0.01 m (value 0.75)")
fig.tight_layout()
fig.savefig(OUT / "raster.png", dpi=120)

# round-trip fidelity vs population size
fig, ax = plt.subplots(figsize=(6, 4))
for n_neurons, color in ((5, "tab:red"), (80, "tab:blue")):
    truth = rng.uniform(-0.9, 0.9, 300) * codec.e_max
    decoded = []
    for e in truth:
        r = poisson_encode(normalize_error(float(e), codec), n_neurons, codec, rng)
        decoded.append(rate_decode(r.s.sum(axis=1), codec))
    err = np.asarray(decoded) - truth
    ax.scatter(truth * 1e3, np.asarray(decoded) * 1e3, s=4, color=color,
               label=f"{n_neurons} neurons (rms {np.sqrt(np.mean(err**2))*1e3:.2f} mm)")
ax.plot([-20, 20], [-20, 20], "k-", lw=0.5)
ax.set_xlabel("true error (mm)")
ax.set_ylabel("decoded error (mm)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "roundtrip.png", dpi=120)
print(f"wrote {OUT / 'raster.png'} and {OUT / 'roundtrip.png'}")
