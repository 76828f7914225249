"""Dual-radar glide-path tracking simulation with spiking-network error fusion.

The package simulates an aircraft descending on a straight glide path,
two ground radars measuring it with physically derived range/bearing
noise, and a spiking neural network (Izhikevich neurons, Poisson-coded
inputs, optional STDP) that fuses the two radars' per-axis measurement
errors into a single lower-variance error estimate.
"""

__version__ = "0.1.0"

from .codec import CodecParams, SpikeRaster, input_current, normalize_error, poisson_encode, rate_decode
from .config import ScenarioConfig, default_config, load_config
from .errors import ConfigError, DomainError, NumericError
from .harness import (
    Histogram,
    RunReport,
    Stats,
    SweepReport,
    compute_stats,
    emit_outputs,
    histogram,
    inverse_variance_oracle,
    run_scenario,
    sweep,
)
from .kinematics import AircraftState, CvNoise, cv_step, generate_trajectory
from .network import (
    NetworkConfig,
    NetworkState,
    WindowTrace,
    build_network,
    calibrate_network,
    run_window,
    synaptic_current_step,
)
from .neuron import NeuronParams, NeuronState, apply_reset, izhikevich_rhs, rk4_step
from .plasticity import StdpParams, SynapseMatrix, on_spike_pair_update, stdp_window
from .radar import (
    ErrorSample,
    RadarId,
    RadarMeasurement,
    RadarParams,
    angle_rms,
    echo_power,
    measure,
    measurement_error,
    range_rms,
    snr,
)

__all__ = [name for name in dir() if not name.startswith("_")]
