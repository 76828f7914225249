#!/usr/bin/env python3
"""How measurement accuracy evolves as the aircraft approaches the radars.

Walks the default glide path, evaluates echo power -> SNR -> range/bearing
RMS for both radars at every sample, and plots the decay of both error
measures. The nearer radar (radar 1) is the more accurate one throughout
the approach.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from snnfuse import angle_rms, default_config, echo_power, range_rms, snr

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

cfg = default_config()
t = np.arange(cfg.n_samples) * cfg.sample_period
x = cfg.aircraft.x + cfg.aircraft.vx * t
y = cfg.aircraft.y + cfg.aircraft.vy * t

fig, (ax_r, ax_th) = plt.subplots(1, 2, figsize=(10, 4))
for name, params, style in (("radar 1", cfg.radar1, "-"), ("radar 2", cfg.radar2, "--")):
    rng_m = np.hypot(x - params.position[0], y - params.position[1])
    snrs = [snr(echo_power(params, r), params.noise_rms) for r in rng_m]
    ax_r.semilogy(t, [range_rms(params.bandwidth, s) for s in snrs], style, label=name)
    ax_th.semilogy(t, [angle_rms(params.wavelength, params.aperture, s) for s in snrs],
                   style, label=name)

    r0 = rng_m[0]
    print(f"{name}: start range {r0:7.1f} m  SNR {snrs[0]:10.0f}  "
          f"sigma_R {range_rms(params.bandwidth, snrs[0])*1e3:6.3f} mm  "
          f"sigma_theta {angle_rms(params.wavelength, params.aperture, snrs[0])*1e6:6.2f} urad")

ax_r.set_xlabel("time (s)"), ax_r.set_ylabel("range RMS (m)"), ax_r.legend()
ax_th.set_xlabel("time (s)"), ax_th.set_ylabel("bearing RMS (rad)"), ax_th.legend()
fig.suptitle("Measurement accuracy improves as the target closes in")
fig.tight_layout()
fig.savefig(OUT / "radar_accuracy.png", dpi=120)
print(f"wrote {OUT / 'radar_accuracy.png'}")
