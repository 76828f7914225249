"""Radar echo power, measurement-accuracy RMS values, and noisy measurements.

Echo power follows the monostatic radar equation; the range and bearing
accuracy of a measurement follow from the SNR via the classical
measurement-accuracy expressions (sqrt(3) lambda / (pi D sqrt(2 SNR)) for
angle, c/2 / (2 pi B sqrt(2 SNR)) for range). Noise is injected in the
polar domain, where those RMS values live, and converted to Cartesian.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "SPEED_OF_LIGHT",
    "RadarId",
    "RadarParams",
    "RadarMeasurement",
    "ErrorSample",
    "echo_power",
    "snr",
    "angle_rms",
    "range_rms",
    "measure",
    "measurement_error",
    "axis_error_sigmas",
]

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact SI value


class RadarId(enum.Enum):
    RADAR1 = "radar1"
    RADAR2 = "radar2"


class ErrorSource(enum.Enum):
    RADAR1 = "radar1"
    RADAR2 = "radar2"
    FUSED = "fused"


@dataclass(frozen=True)
class RadarParams:
    """Physical parameters of one radar. Gains are stored linear, not dB."""

    p_t: float          # transmit power, W
    g_t: float          # transmit gain, linear ratio
    g_r: float          # receive gain, linear ratio
    wavelength: float   # m
    rcs: float          # target cross-section, m^2
    bandwidth: float    # Hz
    loss: float         # clutter loss coefficient (denominator factor)
    aperture: float     # antenna aperture D, m
    position: tuple[float, float]
    noise_rms: float    # receiver noise RMS amplitude; noise power = noise_rms^2

    def __post_init__(self) -> None:
        for name in ("p_t", "g_t", "g_r", "wavelength", "rcs", "bandwidth",
                     "loss", "aperture", "noise_rms"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                raise ConfigError(f"RadarParams.{name} must be a positive finite number, got {v!r}")


@dataclass(frozen=True)
class RadarMeasurement:
    t: float
    radar_id: RadarId
    range_true: float
    bearing_true: float
    range_meas: float
    bearing_meas: float
    x_meas: float
    y_meas: float
    sigma_r: float      # range RMS at the true range, m
    sigma_theta: float  # bearing RMS at the true range, rad
    snr: float          # linear ratio


@dataclass(frozen=True)
class ErrorSample:
    t: float
    ex: float
    ey: float
    source: ErrorSource


def echo_power(params: RadarParams, range_m: float) -> float:
    """Received echo power (W) at the given range."""
    if not range_m > 0:
        raise DomainError(f"range must be positive, got {range_m}")
    num = params.p_t * params.g_t * params.g_r * params.wavelength**2 * params.rcs
    den = (4.0 * math.pi) ** 3 * range_m**4 * params.loss
    return num / den


def snr(p_r: float, noise_rms: float) -> float:
    """Signal-to-noise ratio: echo power over noise power (noise_rms squared)."""
    if not noise_rms > 0:
        raise ConfigError(f"noise_rms must be positive, got {noise_rms}")
    return p_r / (noise_rms * noise_rms)


def angle_rms(wavelength: float, aperture: float, snr_ratio: float) -> float:
    """RMS bearing error (rad) at the given SNR."""
    if not (wavelength > 0 and aperture > 0 and snr_ratio > 0):
        raise DomainError("wavelength, aperture and snr must be positive")
    return math.sqrt(3.0) * wavelength / (math.pi * aperture * math.sqrt(2.0 * snr_ratio))


def range_rms(bandwidth: float, snr_ratio: float) -> float:
    """RMS range error (m) at the given SNR."""
    if not (bandwidth > 0 and snr_ratio > 0):
        raise DomainError("bandwidth and snr must be positive")
    return (SPEED_OF_LIGHT / 2.0) / (2.0 * math.pi * bandwidth * math.sqrt(2.0 * snr_ratio))


def _polar_accuracy(params: RadarParams, range_m: float) -> tuple[float, float, float]:
    """(sigma_r, sigma_theta, snr) at the given true range."""
    s = snr(echo_power(params, range_m), params.noise_rms)
    return range_rms(params.bandwidth, s), angle_rms(params.wavelength, params.aperture, s), s


def measure(
    params: RadarParams,
    true_pos: tuple[float, float],
    t: float,
    radar_id: RadarId,
    rng: np.random.Generator,
    noise_scale: float = 1.0,
) -> RadarMeasurement:
    """Synthesize one noisy measurement of the true position.

    Range and bearing are drawn from normal distributions centred on the
    truth with std equal to the accuracy RMS values at the true range.
    `noise_scale` is a test hook: 0 forces an exact measurement. Two
    normal draws are always consumed, so a run's stream advances
    identically for any noise_scale.
    """
    dx = true_pos[0] - params.position[0]
    dy = true_pos[1] - params.position[1]
    r_true = math.hypot(dx, dy)
    if r_true == 0.0:
        raise DomainError(f"aircraft coincides with radar at {params.position}")
    bearing_true = math.atan2(dy, dx)
    sigma_r, sigma_theta, s = _polar_accuracy(params, r_true)

    dr, dth = rng.normal(size=2)
    r_meas = r_true + noise_scale * sigma_r * dr
    b_meas = bearing_true + noise_scale * sigma_theta * dth
    return RadarMeasurement(
        t=t,
        radar_id=radar_id,
        range_true=r_true,
        bearing_true=bearing_true,
        range_meas=r_meas,
        bearing_meas=b_meas,
        x_meas=params.position[0] + r_meas * math.cos(b_meas),
        y_meas=params.position[1] + r_meas * math.sin(b_meas),
        sigma_r=sigma_r,
        sigma_theta=sigma_theta,
        snr=s,
    )


def measurement_error(m: RadarMeasurement, true_pos: tuple[float, float]) -> ErrorSample:
    """Per-axis error: truth minus measurement."""
    source = ErrorSource.RADAR1 if m.radar_id is RadarId.RADAR1 else ErrorSource.RADAR2
    return ErrorSample(t=m.t, ex=true_pos[0] - m.x_meas, ey=true_pos[1] - m.y_meas, source=source)


def axis_error_sigmas(params: RadarParams, true_pos: tuple[float, float]) -> tuple[float, float]:
    """Analytic per-axis error std (m) of a measurement at the given geometry.

    Small-angle propagation of the polar noise: the radial component has
    std sigma_r, the cross-range component has std range * sigma_theta.
    """
    dx = true_pos[0] - params.position[0]
    dy = true_pos[1] - params.position[1]
    r = math.hypot(dx, dy)
    if r == 0.0:
        raise DomainError("aircraft coincides with radar")
    c, s = dx / r, dy / r
    sigma_r, sigma_theta, _ = _polar_accuracy(params, r)
    cross = r * sigma_theta
    sx = math.sqrt((sigma_r * c) ** 2 + (cross * s) ** 2)
    sy = math.sqrt((sigma_r * s) ** 2 + (cross * c) ** 2)
    return sx, sy
