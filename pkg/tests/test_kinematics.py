import math

import numpy as np
import pytest

from snnfuse.errors import ConfigError, DomainError
from snnfuse.kinematics import AircraftState, CvNoise, cv_step, generate_trajectory


def test_zero_noise_step_moves_position_only():
    s = cv_step(AircraftState(x=0.0, y=0.0, vx=10.0, vy=0.0), T=1.0)
    assert s.x == 10.0 and s.vx == 10.0
    assert s.y == 0.0 and s.vy == 0.0


def test_noise_matrix_gain():
    # G = [T^2/2, T]: a unit acceleration sample over T=2 adds 2 m and 2 m/s
    s = cv_step(AircraftState(x=0.0, y=0.0, vx=0.0, vy=0.0), T=2.0,
                noise=CvNoise(w_x=1.0, w_y=0.0, sigma_w=1.0))
    assert s.x == pytest.approx(2.0) and s.vx == pytest.approx(2.0)
    assert s.y == 0.0 and s.vy == 0.0


def test_600_small_steps_hit_closed_form():
    s = AircraftState(x=-600.0, y=100.0, vx=10.0, vy=-1.0)
    for _ in range(600):
        s = cv_step(s, T=0.1)
    assert s.x == pytest.approx(0.0, abs=1e-9)
    assert s.y == pytest.approx(40.0, abs=1e-9)


def test_rejects_nonfinite_state():
    with pytest.raises(DomainError):
        cv_step(AircraftState(x=math.nan, y=0.0, vx=0.0, vy=0.0), T=0.1)


def test_rejects_nonpositive_duration():
    with pytest.raises(DomainError):
        cv_step(AircraftState(x=0.0, y=0.0, vx=0.0, vy=0.0), T=0.0)


def test_cvnoise_zero_sigma_forces_zero_samples():
    with pytest.raises(ConfigError):
        CvNoise(w_x=0.5, w_y=0.0, sigma_w=0.0)


class TestGenerateTrajectory:
    def test_starts_at_initial_position(self):
        traj = generate_trajectory(AircraftState(-600.0, 100.0, 10.0, -1.0), 60.0, 0.1)
        t0, s0 = traj[0]
        assert t0 == 0.0
        assert (s0.x, s0.y, s0.vx, s0.vy) == (-600.0, 100.0, 10.0, -1.0)

    def test_sample_count(self):
        traj = generate_trajectory(AircraftState(-600.0, 100.0, 10.0, -1.0), 60.0, 0.1)
        assert len(traj) == 601

    def test_unforced_points_collinear(self):
        traj = generate_trajectory(AircraftState(-600.0, 100.0, 10.0, -1.0), 60.0, 0.1)
        slope = -1.0 / 10.0
        for _, s in traj[:-1]:
            assert (s.y - 100.0) == pytest.approx(slope * (s.x + 600.0), abs=1e-9)

    def test_closed_form_at_30s(self):
        traj = generate_trajectory(AircraftState(-600.0, 100.0, 10.0, -1.0), 60.0, 0.1)
        t, s = traj[300]
        assert t == pytest.approx(30.0)
        assert s.x == pytest.approx(-300.0, abs=1e-9)
        assert s.y == pytest.approx(70.0, abs=1e-9)

    def test_rejects_bad_config(self):
        with pytest.raises(ConfigError):
            generate_trajectory(AircraftState(0, 0, 1, 0), duration=0.0, sample_period=0.1)
        with pytest.raises(ConfigError):
            generate_trajectory(AircraftState(0, 0, 1, 0), duration=1.0, sample_period=-0.1)

    def test_noise_requires_rng(self):
        with pytest.raises(ConfigError):
            generate_trajectory(AircraftState(0, 0, 1, 0), 10.0, 0.1, sigma_w=0.5)


def test_zero_noise_linearity_over_600_steps():
    traj = generate_trajectory(AircraftState(-600.0, 100.0, 10.0, -1.0), 60.0, 0.1)
    for t, s in traj:
        assert abs(s.x - (-600.0 + 10.0 * t)) < 1e-9
        assert abs(s.y - (100.0 - 1.0 * t)) < 1e-9


def test_semigroup_property():
    s = AircraftState(x=3.0, y=-7.0, vx=2.5, vy=0.75)
    two_hops = cv_step(cv_step(s, T=0.4), T=0.6)
    one_hop = cv_step(s, T=1.0)
    assert abs(two_hops.x - one_hop.x) < 1e-12
    assert abs(two_hops.y - one_hop.y) < 1e-12
    assert two_hops.vx == one_hop.vx and two_hops.vy == one_hop.vy


def test_velocity_variance_accumulation():
    # final-velocity variance over seeds must match sigma_w^2 * T * n_steps
    sigma_w, T, n_steps = 0.3, 0.1, 50
    finals = []
    for seed in range(4000):
        rng = np.random.default_rng(seed)
        traj = generate_trajectory(AircraftState(0, 0, 0, 0), n_steps * T, T, sigma_w, rng)
        finals.append(traj[-1][1].vx)
    expected = sigma_w**2 * T * n_steps
    assert np.var(finals) == pytest.approx(expected, rel=0.10)
