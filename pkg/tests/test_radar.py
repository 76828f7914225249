import math

import numpy as np
import pytest

from snnfuse.config import default_config
from snnfuse.errors import ConfigError, DomainError
from snnfuse.radar import (
    SPEED_OF_LIGHT,
    RadarId,
    angle_rms,
    axis_error_sigmas,
    echo_power,
    measure,
    measurement_error,
    range_rms,
    snr,
)

TABLE = default_config().radar1  # shipped constants: 300 W, 20 dB gains, etc.
R_START = math.hypot(600.0, 100.0)  # aircraft start seen from radar1


def expected_echo_power(r):
    # independent evaluation of the radar equation with the shipped constants
    return 300.0 * 100.0 * 100.0 * 0.03188**2 * 6.0 / ((4 * math.pi) ** 3 * r**4 * 1e-17)


class TestEchoPower:
    def test_r4_law(self):
        assert echo_power(TABLE, 200.0) / echo_power(TABLE, 400.0) == pytest.approx(16.0)

    def test_linear_in_rcs(self):
        from dataclasses import replace

        doubled = replace(TABLE, rcs=2 * TABLE.rcs)
        assert echo_power(doubled, 500.0) == pytest.approx(2 * echo_power(TABLE, 500.0))

    def test_start_of_trajectory_value(self):
        p = echo_power(TABLE, R_START)
        assert p == pytest.approx(expected_echo_power(R_START), rel=1e-12)
        assert p == pytest.approx(6.7e6, rel=0.01)

    def test_rejects_zero_range(self):
        with pytest.raises(DomainError):
            echo_power(TABLE, 0.0)


class TestSnr:
    def test_unit_ratio(self):
        assert snr(100.0, 10.0) == pytest.approx(1.0)

    def test_quadratic_in_noise_rms(self):
        assert snr(100.0, 20.0) == pytest.approx(snr(100.0, 10.0) / 4.0)

    def test_start_of_trajectory_value(self):
        s = snr(echo_power(TABLE, R_START), TABLE.noise_rms)
        assert s == pytest.approx(expected_echo_power(R_START) / 100.0, rel=1e-12)
        assert s == pytest.approx(6.7e4, rel=0.01)

    def test_rejects_nonpositive_noise(self):
        with pytest.raises(ConfigError):
            snr(100.0, 0.0)


class TestAccuracyRms:
    def test_angle_inverse_sqrt_snr(self):
        assert angle_rms(0.03188, 10.0, 4.0) == pytest.approx(angle_rms(0.03188, 10.0, 1.0) / 2.0)

    def test_angle_hand_value(self):
        # sqrt(2*0.5) = 1, so the result is sqrt(3)*lambda/(pi*D)
        assert angle_rms(0.03188, 10.0, 0.5) == pytest.approx(
            math.sqrt(3.0) * 0.03188 / (math.pi * 10.0), rel=1e-12
        )
        assert angle_rms(0.03188, 10.0, 0.5) == pytest.approx(1.7576e-3, rel=1e-3)

    def test_angle_chained_value(self):
        s = expected_echo_power(R_START) / 100.0
        expected = math.sqrt(3.0) * 0.03188 / (math.pi * 10.0 * math.sqrt(2.0 * s))
        assert angle_rms(0.03188, 10.0, s) == pytest.approx(expected, rel=1e-12)
        assert angle_rms(0.03188, 10.0, s) == pytest.approx(4.8e-6, rel=0.01)

    def test_range_limit(self):
        assert range_rms(1e8, 1e30) == pytest.approx(0.0, abs=1e-12)

    def test_range_hand_value(self):
        assert range_rms(1e8, 0.5) == pytest.approx(SPEED_OF_LIGHT / (4 * math.pi * 1e8), rel=1e-12)
        assert range_rms(1e8, 0.5) == pytest.approx(0.2386, rel=1e-3)

    def test_range_chained_value(self):
        s = expected_echo_power(R_START) / 100.0
        assert range_rms(1e8, s) == pytest.approx(6.5e-4, rel=0.01)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            angle_rms(0.03188, 10.0, 0.0)
        with pytest.raises(DomainError):
            range_rms(0.0, 1.0)


@pytest.fixture(scope="module")
def many_measurements():
    rng = np.random.default_rng(2024)
    true_pos = (-600.0, 100.0)
    ms = [measure(TABLE, true_pos, 0.0, RadarId.RADAR1, rng) for _ in range(100_000)]
    return true_pos, ms


class TestMeasure:
    def test_zero_noise_hook_reproduces_truth(self):
        rng = np.random.default_rng(1)
        m = measure(TABLE, (-600.0, 100.0), 0.0, RadarId.RADAR1, rng, noise_scale=0.0)
        assert m.x_meas == pytest.approx(-600.0, abs=1e-9)
        assert m.y_meas == pytest.approx(100.0, abs=1e-9)

    def test_fixed_seed_bit_identical(self):
        a = measure(TABLE, (-600.0, 100.0), 0.0, RadarId.RADAR1, np.random.default_rng(7))
        b = measure(TABLE, (-600.0, 100.0), 0.0, RadarId.RADAR1, np.random.default_rng(7))
        assert (a.range_meas, a.bearing_meas) == (b.range_meas, b.bearing_meas)

    def test_cartesian_consistency(self):
        m = measure(TABLE, (-600.0, 100.0), 0.0, RadarId.RADAR1, np.random.default_rng(3))
        assert m.x_meas == TABLE.position[0] + m.range_meas * math.cos(m.bearing_meas)
        assert m.y_meas == TABLE.position[1] + m.range_meas * math.sin(m.bearing_meas)

    def test_range_noise_std_matches_sigma(self, many_measurements):
        _, ms = many_measurements
        devs = np.array([m.range_meas - m.range_true for m in ms])
        assert devs.std() == pytest.approx(ms[0].sigma_r, rel=0.02)

    def test_bearing_noise_std_matches_sigma(self, many_measurements):
        _, ms = many_measurements
        devs = np.array([m.bearing_meas - m.bearing_true for m in ms])
        assert devs.std() == pytest.approx(ms[0].sigma_theta, rel=0.02)

    def test_coincident_position_rejected(self):
        with pytest.raises(DomainError):
            measure(TABLE, TABLE.position, 0.0, RadarId.RADAR1, np.random.default_rng(0))


class TestMeasurementError:
    def test_exact_measurement_gives_zero(self):
        rng = np.random.default_rng(1)
        m = measure(TABLE, (-600.0, 100.0), 0.0, RadarId.RADAR1, rng, noise_scale=0.0)
        e = measurement_error(m, (-600.0, 100.0))
        assert e.ex == pytest.approx(0.0, abs=1e-9) and e.ey == pytest.approx(0.0, abs=1e-9)

    def test_sign_convention(self):
        # truth minus measurement: a measurement 0.02 m short on x gives ex = +0.02
        rng = np.random.default_rng(1)
        m = measure(TABLE, (100.0, 0.0001), 0.0, RadarId.RADAR1, rng, noise_scale=0.0)
        from dataclasses import replace as _rp
        shifted = _rp(m, x_meas=m.x_meas - 0.02)
        e = measurement_error(shifted, (100.0, 0.0001))
        assert e.ex == pytest.approx(0.02, abs=1e-12)

    def test_pure_range_error_projects_along_bearing(self):
        # with zero angle noise, a range offset delta maps to
        # (ex, ey) = (-delta cos(bearing), -delta sin(bearing))
        true_pos = (-600.0, 100.0)
        rng = np.random.default_rng(1)
        m = measure(TABLE, true_pos, 0.0, RadarId.RADAR1, rng, noise_scale=0.0)
        delta = 0.5
        from dataclasses import replace as _rp
        bumped = _rp(
            m,
            range_meas=m.range_meas + delta,
            x_meas=TABLE.position[0] + (m.range_meas + delta) * math.cos(m.bearing_meas),
            y_meas=TABLE.position[1] + (m.range_meas + delta) * math.sin(m.bearing_meas),
        )
        e = measurement_error(bumped, true_pos)
        assert e.ex == pytest.approx(-delta * math.cos(m.bearing_true), abs=1e-9)
        assert e.ey == pytest.approx(-delta * math.sin(m.bearing_true), abs=1e-9)

    def test_unbiasedness(self, many_measurements):
        true_pos, ms = many_measurements
        ex = np.array([true_pos[0] - m.x_meas for m in ms])
        ey = np.array([true_pos[1] - m.y_meas for m in ms])
        for errs in (ex, ey):
            se = errs.std() / math.sqrt(len(errs))
            assert abs(errs.mean()) < 3 * se


def glide_path_positions():
    t = np.arange(601) * 0.1
    return np.stack([-600.0 + 10.0 * t, 100.0 - t], axis=1)


class TestTrajectoryProperties:
    def test_sigmas_strictly_decrease_for_both_radars(self):
        cfg = default_config()
        for params in (cfg.radar1, cfg.radar2):
            prev_r, prev_th = math.inf, math.inf
            for pos in glide_path_positions():
                r = math.hypot(pos[0] - params.position[0], pos[1] - params.position[1])
                s = snr(echo_power(params, r), params.noise_rms)
                sr = range_rms(params.bandwidth, s)
                sth = angle_rms(params.wavelength, params.aperture, s)
                assert sr < prev_r and sth < prev_th
                prev_r, prev_th = sr, sth

    def test_nearer_radar_dominates(self):
        cfg = default_config()
        for pos in glide_path_positions():
            r1 = math.hypot(pos[0], pos[1])
            r2 = math.hypot(pos[0] - 100.0, pos[1])
            assert r1 < r2  # radar1 is nearer along the whole approach
            s1 = snr(echo_power(cfg.radar1, r1), cfg.radar1.noise_rms)
            s2 = snr(echo_power(cfg.radar2, r2), cfg.radar2.noise_rms)
            assert range_rms(cfg.radar1.bandwidth, s1) < range_rms(cfg.radar2.bandwidth, s2)

    def test_axis_sigma_composition(self):
        # axis sigmas are the polar RMS values rotated by the bearing
        cfg = default_config()
        pos = (-600.0, 100.0)
        sx, sy = axis_error_sigmas(cfg.radar1, pos)
        r = math.hypot(*pos)
        s = snr(echo_power(cfg.radar1, r), cfg.radar1.noise_rms)
        sr = range_rms(cfg.radar1.bandwidth, s)
        cross = r * angle_rms(cfg.radar1.wavelength, cfg.radar1.aperture, s)
        c, sn = pos[0] / r, pos[1] / r
        assert sx == pytest.approx(math.hypot(sr * c, cross * sn), rel=1e-12)
        assert sy == pytest.approx(math.hypot(sr * sn, cross * c), rel=1e-12)
