"""Constant-velocity motion of the aircraft on its glide path.

The aircraft moves in a vertical plane (along-track x, altitude y). Each
axis follows an independent discrete constant-velocity model

    [pos; vel] <- Phi [pos; vel] + G w,   Phi = [[1, T], [0, 1]],  G = [T^2/2, T]

with w a white acceleration sample. With zero process noise the
trajectory is the exact straight glide line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

__all__ = ["AircraftState", "CvNoise", "cv_step", "generate_trajectory"]


@dataclass(frozen=True)
class AircraftState:
    """Planar position/velocity state. vy < 0 means descending."""

    x: float
    y: float
    vx: float
    vy: float

    def is_finite(self) -> bool:
        return all(map(math.isfinite, (self.x, self.y, self.vx, self.vy)))


@dataclass(frozen=True)
class CvNoise:
    """One pair of acceleration noise samples (m/s^2) plus the generating sigma."""

    w_x: float = 0.0
    w_y: float = 0.0
    sigma_w: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma_w < 0:
            raise ConfigError(f"sigma_w must be >= 0, got {self.sigma_w}")
        if self.sigma_w == 0.0 and (self.w_x != 0.0 or self.w_y != 0.0):
            raise ConfigError("sigma_w = 0 forces zero noise samples")

    @staticmethod
    def draw(sigma_w: float, T: float, rng: np.random.Generator) -> "CvNoise":
        """Sample per-step acceleration noise for a step of duration T.

        The sample std is sigma_w / sqrt(T) (white-noise acceleration
        convention), so that velocity variance accumulates as
        sigma_w^2 * T * n_steps = sigma_w^2 * t.
        """
        if sigma_w == 0.0:
            return CvNoise()
        s = sigma_w / math.sqrt(T)
        wx, wy = rng.normal(0.0, s, size=2)
        return CvNoise(w_x=float(wx), w_y=float(wy), sigma_w=sigma_w)


def cv_step(state: AircraftState, T: float, noise: CvNoise = CvNoise()) -> AircraftState:
    """Advance the state by one constant-velocity step of duration T."""
    if not T > 0:
        raise DomainError(f"step duration must be positive, got {T}")
    if not state.is_finite():
        raise DomainError(f"non-finite aircraft state: {state}")
    half_t2 = 0.5 * T * T
    return AircraftState(
        x=state.x + T * state.vx + half_t2 * noise.w_x,
        y=state.y + T * state.vy + half_t2 * noise.w_y,
        vx=state.vx + T * noise.w_x,
        vy=state.vy + T * noise.w_y,
    )


def generate_trajectory(
    initial: AircraftState,
    duration: float,
    sample_period: float,
    sigma_w: float = 0.0,
    rng: np.random.Generator | None = None,
) -> list[tuple[float, AircraftState]]:
    """Generate floor(duration/sample_period)+1 states starting at `initial`.

    Returns a list of (time, state) pairs on the uniform sample grid. With
    sigma_w = 0 the result is the exact straight glide line and no random
    draws are consumed.
    """
    if not duration > 0:
        raise ConfigError(f"duration must be positive, got {duration}")
    if not sample_period > 0:
        raise ConfigError(f"sample_period must be positive, got {sample_period}")
    if sigma_w > 0 and rng is None:
        raise ConfigError("a random generator is required when sigma_w > 0")

    n_steps = int(math.floor(duration / sample_period + 1e-9))
    out = [(0.0, initial)]
    state = initial
    for k in range(1, n_steps + 1):
        noise = CvNoise.draw(sigma_w, sample_period, rng) if sigma_w > 0 else CvNoise()
        state = cv_step(state, sample_period, noise)
        out.append((k * sample_period, state))
    return out
