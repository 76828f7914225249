"""End-to-end scenario execution, statistics, seed sweeps, and output files.

One run walks the full pipeline per sample: true position -> echo power
-> SNR -> accuracy RMS values -> noisy polar measurements -> per-axis
errors -> one SNN window -> fused error. An inverse-variance fusion of
the same per-sample errors is carried along as an analytic baseline.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import ScenarioConfig
from .errors import DomainError
from .kinematics import generate_trajectory
from .network import build_network, calibrate_network, run_window
from .radar import (
    ErrorSample,
    ErrorSource,
    RadarId,
    axis_error_sigmas,
    measure,
    measurement_error,
)
from .seeding import (
    TAG_BUILD,
    TAG_RADAR1,
    TAG_RADAR2,
    TAG_TRAJECTORY,
    TAG_WINDOW,
    derive_rng,
)

__all__ = [
    "SOURCES",
    "Stats",
    "Histogram",
    "SampleRecord",
    "RunReport",
    "SweepReport",
    "run_scenario",
    "compute_stats",
    "histogram",
    "inverse_variance_oracle",
    "sweep",
    "emit_outputs",
]

SOURCES = ("radar1", "radar2", "snn", "oracle")
AXES = ("x", "y")
HIST_BIN_WIDTH = 0.01  # m

CSV_HEADER = "t,true_x,true_y,r1_ex,r1_ey,r2_ex,r2_ey,snn_ex,snn_ey,oracle_ex,oracle_ey"


@dataclass(frozen=True)
class Stats:
    mean: float
    variance: float  # population variance (divide by n)
    rms: float


@dataclass(frozen=True)
class Histogram:
    bin_width: float
    lefts: np.ndarray   # left bin edges, exact multiples of bin_width
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class SampleRecord:
    t: float
    true_x: float
    true_y: float
    r1: ErrorSample
    r2: ErrorSample
    fused: ErrorSample
    oracle_ex: float
    oracle_ey: float
    sigma1: tuple[float, float]  # analytic per-axis error std of radar1 here
    sigma2: tuple[float, float]


@dataclass
class RunReport:
    seed: int
    samples: list[SampleRecord]
    stats: dict[tuple[str, str], Stats]
    histograms: dict[tuple[str, str], Histogram]
    e_max: tuple[float, float]
    saturation: tuple[int, int]


@dataclass
class SweepReport:
    seeds: list[int]
    per_seed_stats: list[dict[tuple[str, str], Stats]]
    fused_below_radar1: dict[str, float]  # per axis, fraction of seeds
    fused_below_radar2: dict[str, float]
    mean_fused_variance: dict[str, float]


def compute_stats(values: Iterable[float]) -> Stats:
    """Population mean, variance, and RMS of a collection of scalars."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.size == 0:
        raise DomainError("compute_stats requires at least one sample")
    mean = float(arr.mean())
    variance = float(((arr - mean) ** 2).mean())
    rms = float(math.sqrt((arr**2).mean()))
    return Stats(mean=mean, variance=variance, rms=rms)


def histogram(values: Iterable[float], bin_width: float = HIST_BIN_WIDTH) -> Histogram:
    """Counts over half-open bins [k*w, (k+1)*w) with edges aligned to multiples of w."""
    if not bin_width > 0:
        raise DomainError(f"bin_width must be positive, got {bin_width}")
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.size == 0:
        return Histogram(bin_width=bin_width, lefts=np.empty(0), counts=np.empty(0, dtype=int))
    k = np.floor(arr / bin_width).astype(np.int64)
    ks = np.arange(k.min(), k.max() + 1)
    counts = np.bincount(k - k.min(), minlength=ks.size)
    return Histogram(bin_width=bin_width, lefts=ks * bin_width, counts=counts)


def inverse_variance_oracle(e_r1: float, e_r2: float, sigma1: float, sigma2: float) -> float:
    """Inverse-variance weighted fusion of two error estimates (test baseline)."""
    if not (sigma1 > 0 and sigma2 > 0):
        raise DomainError("oracle sigmas must be positive")
    w1 = 1.0 / (sigma1 * sigma1)
    w2 = 1.0 / (sigma2 * sigma2)
    return (e_r1 * w1 + e_r2 * w2) / (w1 + w2)


def _resolve_e_max(cfg: ScenarioConfig) -> tuple[float, float]:
    """Full-scale codec range per axis: 5x the largest analytic per-axis std at start."""
    if cfg.e_max_x is not None and cfg.e_max_y is not None:
        return cfg.e_max_x, cfg.e_max_y
    start = (cfg.aircraft.x, cfg.aircraft.y)
    s1 = axis_error_sigmas(cfg.radar1, start)
    s2 = axis_error_sigmas(cfg.radar2, start)
    auto_x = 5.0 * max(s1[0], s2[0])
    auto_y = 5.0 * max(s1[1], s2[1])
    return (cfg.e_max_x if cfg.e_max_x is not None else auto_x,
            cfg.e_max_y if cfg.e_max_y is not None else auto_y)


def run_scenario(cfg: ScenarioConfig, fuse_override=None) -> RunReport:
    """Execute the full pipeline once and collect statistics.

    `fuse_override` is a test hook: a callable (e1, e2) -> (ex, ey) used in
    place of the spiking network, e.g. `lambda e1, e2: e1` to pass radar 1
    errors straight through. The network is neither built nor calibrated
    when it is set.
    """
    trajectory = generate_trajectory(
        cfg.aircraft, cfg.duration, cfg.sample_period, cfg.sigma_w,
        derive_rng(cfg.seed, TAG_TRAJECTORY),
    )
    if fuse_override is None:
        e_max = _resolve_e_max(cfg)
        codecs = (replace(cfg.network.codec, e_max=e_max[0]),
                  replace(cfg.network.codec, e_max=e_max[1]))
        net = build_network(cfg.network, derive_rng(cfg.seed, TAG_BUILD), codecs)
        calibrate_network(net, cfg.seed)
    else:
        e_max = (cfg.network.codec.e_max, cfg.network.codec.e_max)
        net = None

    samples: list[SampleRecord] = []
    for i, (t, state) in enumerate(trajectory):
        true_pos = (state.x, state.y)
        try:
            m1 = measure(cfg.radar1, true_pos, t, RadarId.RADAR1,
                         derive_rng(cfg.seed, TAG_RADAR1, i), cfg.noise_scale)
            m2 = measure(cfg.radar2, true_pos, t, RadarId.RADAR2,
                         derive_rng(cfg.seed, TAG_RADAR2, i), cfg.noise_scale)
            e1 = measurement_error(m1, true_pos)
            e2 = measurement_error(m2, true_pos)
            if net is not None:
                fused_xy, _ = run_window(net, (e1.ex, e1.ey), (e2.ex, e2.ey),
                                         derive_rng(cfg.seed, TAG_WINDOW, i))
            else:
                fused_xy = fuse_override((e1.ex, e1.ey), (e2.ex, e2.ey))
            sig1 = axis_error_sigmas(cfg.radar1, true_pos)
            sig2 = axis_error_sigmas(cfg.radar2, true_pos)
        except Exception as exc:
            raise type(exc)(f"sample {i} (t={t:.3f} s): {exc}") from exc
        fused = ErrorSample(t=t, ex=fused_xy[0], ey=fused_xy[1], source=ErrorSource.FUSED)
        samples.append(SampleRecord(
            t=t, true_x=state.x, true_y=state.y, r1=e1, r2=e2, fused=fused,
            oracle_ex=inverse_variance_oracle(e1.ex, e2.ex, sig1[0], sig2[0]),
            oracle_ey=inverse_variance_oracle(e1.ey, e2.ey, sig1[1], sig2[1]),
            sigma1=sig1, sigma2=sig2,
        ))

    stats: dict[tuple[str, str], Stats] = {}
    hists: dict[tuple[str, str], Histogram] = {}
    for source in SOURCES:
        for axis in AXES:
            vals = extract_series(samples, source, axis)
            stats[(source, axis)] = compute_stats(vals)
            hists[(source, axis)] = histogram(vals, HIST_BIN_WIDTH)
    saturation = (0, 0) if net is None else (net.saturation[0].count, net.saturation[1].count)
    return RunReport(
        seed=cfg.seed, samples=samples, stats=stats, histograms=hists, e_max=e_max,
        saturation=saturation,
    )


def extract_series(samples: Sequence[SampleRecord], source: str, axis: str) -> np.ndarray:
    """Error time series of one source on one axis."""
    idx = 0 if axis == "x" else 1
    if source == "radar1":
        vals = [(s.r1.ex, s.r1.ey)[idx] for s in samples]
    elif source == "radar2":
        vals = [(s.r2.ex, s.r2.ey)[idx] for s in samples]
    elif source == "snn":
        vals = [(s.fused.ex, s.fused.ey)[idx] for s in samples]
    elif source == "oracle":
        vals = [(s.oracle_ex, s.oracle_ey)[idx] for s in samples]
    else:
        raise DomainError(f"unknown source {source!r}")
    return np.asarray(vals)


# ---------------------------------------------------------------------------
# seed sweeps

def _sweep_one(args: tuple[ScenarioConfig, int, str | None]) -> tuple[int, dict, tuple]:
    cfg, seed, out_dir = args
    report = run_scenario(replace(cfg, seed=seed))
    if out_dir is not None:
        seed_dir = Path(out_dir) / f"seed_{seed}"
        seed_dir.mkdir(parents=True, exist_ok=True)
        _write_errors_csv(report, seed_dir / "errors.csv")
        _write_stats_csv(report.stats, seed_dir / "stats.csv")
    return seed, report.stats, report.e_max


def sweep(
    cfg: ScenarioConfig,
    n_seeds: int,
    jobs: int = 1,
    out_dir: str | Path | None = None,
) -> SweepReport:
    """Run seeds seed+0 .. seed+n_seeds-1 and aggregate their statistics.

    With out_dir set, each seed writes errors.csv and stats.csv into
    out_dir/seed_<seed>/ from its own worker; contents are independent of
    the job count.
    """
    if n_seeds < 1:
        raise DomainError(f"n_seeds must be >= 1, got {n_seeds}")
    seeds = [cfg.seed + k for k in range(n_seeds)]
    work = [(cfg, s, str(out_dir) if out_dir is not None else None) for s in seeds]
    if jobs <= 1:
        results = [_sweep_one(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_one, work))
    results.sort(key=lambda r: r[0])

    per_seed_stats = [stats for _, stats, _ in results]
    below1 = {axis: 0 for axis in AXES}
    below2 = {axis: 0 for axis in AXES}
    mean_fused = {axis: 0.0 for axis in AXES}
    for stats in per_seed_stats:
        for axis in AXES:
            fused_var = stats[("snn", axis)].variance
            below1[axis] += fused_var < stats[("radar1", axis)].variance
            below2[axis] += fused_var < stats[("radar2", axis)].variance
            mean_fused[axis] += fused_var
    n = float(n_seeds)
    return SweepReport(
        seeds=seeds,
        per_seed_stats=per_seed_stats,
        fused_below_radar1={a: below1[a] / n for a in AXES},
        fused_below_radar2={a: below2[a] / n for a in AXES},
        mean_fused_variance={a: mean_fused[a] / n for a in AXES},
    )


# ---------------------------------------------------------------------------
# output emission

def _fmt(x: float) -> str:
    return repr(float(x))


def _write_errors_csv(report: RunReport, path: Path) -> None:
    lines = [CSV_HEADER]
    for s in report.samples:
        lines.append(",".join(map(_fmt, (
            s.t, s.true_x, s.true_y, s.r1.ex, s.r1.ey, s.r2.ex, s.r2.ey,
            s.fused.ex, s.fused.ey, s.oracle_ex, s.oracle_ey,
        ))))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_stats_csv(stats: dict[tuple[str, str], Stats], path: Path) -> None:
    lines = ["source,axis,mean,variance,rms"]
    for source in SOURCES:
        for axis in AXES:
            st = stats[(source, axis)]
            lines.append(f"{source},{axis},{_fmt(st.mean)},{_fmt(st.variance)},{_fmt(st.rms)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_histograms_csv(hists: dict[tuple[str, str], Histogram], path: Path) -> None:
    lines = ["source,axis,bin_left,bin_right,count"]
    for source in SOURCES:
        for axis in AXES:
            h = hists[(source, axis)]
            for left, count in zip(h.lefts, h.counts):
                lines.append(
                    f"{source},{axis},{_fmt(left)},{_fmt(left + h.bin_width)},{int(count)}"
                )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _setup_matplotlib():
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "snnfuse"
    import matplotlib.pyplot as plt

    return plt


_SOURCE_STYLE = {
    "radar1": ("tab:blue", "radar 1"),
    "radar2": ("tab:orange", "radar 2"),
    "snn": ("tab:green", "SNN fused"),
}


def _save(fig, path: Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})


def _plot_errors(report: RunReport, axis: str, path: Path) -> None:
    plt = _setup_matplotlib()
    t = np.array([s.t for s in report.samples])
    fig, ax = plt.subplots(figsize=(8, 4))
    for source in ("radar1", "radar2", "snn"):
        color, label = _SOURCE_STYLE[source]
        ax.plot(t, extract_series(report.samples, source, axis), color=color,
                label=label, linewidth=0.8)
    ax.set_xlabel("time (s)")
    ax.set_ylabel(f"{axis} position error (m)")
    ax.legend(loc="upper right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)


def _plot_hist(report: RunReport, axis: str, path: Path) -> None:
    plt = _setup_matplotlib()
    fig, ax = plt.subplots(figsize=(8, 4))
    hists = [report.histograms[(source, axis)] for source in ("radar1", "radar2", "snn")]
    lo = min(h.lefts.min() for h in hists if h.lefts.size)
    hi = max(h.lefts.max() for h in hists if h.lefts.size)
    lefts = np.arange(round(lo / HIST_BIN_WIDTH), round(hi / HIST_BIN_WIDTH) + 1) * HIST_BIN_WIDTH
    width = HIST_BIN_WIDTH / 4.0
    for si, source in enumerate(("radar1", "radar2", "snn")):
        h = report.histograms[(source, axis)]
        counts = dict(zip(np.round(h.lefts / HIST_BIN_WIDTH).astype(int), h.counts))
        y = [counts.get(int(round(left / HIST_BIN_WIDTH)), 0) for left in lefts]
        color, label = _SOURCE_STYLE[source]
        ax.bar(lefts + (si + 0.5) * width, y, width=width, color=color, label=label,
               align="edge")
    ax.set_xlabel(f"{axis} position error (m), bin width {HIST_BIN_WIDTH} m")
    ax.set_ylabel("count")
    ax.legend(loc="upper right")
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)


def _plot_stats_bar(report: RunReport, path: Path) -> None:
    plt = _setup_matplotlib()
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    sources = ("radar1", "radar2", "snn")
    xticks = np.arange(len(AXES))
    width = 0.25
    for panel, quantity in zip(axes, ("mean", "variance")):
        for si, source in enumerate(sources):
            vals = [getattr(report.stats[(source, axis)], quantity) for axis in AXES]
            color, label = _SOURCE_STYLE[source]
            panel.bar(xticks + si * width, vals, width=width, color=color, label=label)
        panel.set_xticks(xticks + width)
        panel.set_xticklabels([f"{a} axis" for a in AXES])
        panel.set_ylabel(f"error {quantity}" + (" (m)" if quantity == "mean" else " (m^2)"))
        panel.grid(True, axis="y", alpha=0.3)
    axes[0].legend(loc="best")
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)


def emit_outputs(report: RunReport, out_dir: str | Path) -> list[Path]:
    """Write the CSV tables and SVG plots for one run; returns the paths."""
    if not report.samples:
        raise DomainError("cannot emit outputs for an empty report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    p = out / "errors.csv"
    _write_errors_csv(report, p)
    written.append(p)
    p = out / "histograms.csv"
    _write_histograms_csv(report.histograms, p)
    written.append(p)
    p = out / "stats.csv"
    _write_stats_csv(report.stats, p)
    written.append(p)

    for axis in AXES:
        p = out / f"errors_{axis}.svg"
        _plot_errors(report, axis, p)
        written.append(p)
        p = out / f"hist_{axis}.svg"
        _plot_hist(report, axis, p)
        written.append(p)
    p = out / "stats_bar.svg"
    _plot_stats_bar(report, p)
    written.append(p)
    return written
