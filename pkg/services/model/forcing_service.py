"""Inlet forcing laws"""

import numpy as np

from models import ForcingKind, InletForcing


def _scalar_or_array(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def forcing_amplitude(inlet: InletForcing, t: float):
    """Amplitude of the sinusoidal inlet perturbation at time t.

    Burgers: theta1. Euler: theta, or theta0 (1 + sin(omega t / b)) in truth mode.
    """
    theta = inlet.theta
    if inlet.kind == ForcingKind.BURGERS_PHASE_AMPLITUDE:
        return _scalar_or_array(theta[..., 0])
    amplitude = theta[..., 0]
    if inlet.is_truth_mode:
        omega_theta = inlet.omega / inlet.amplitude_period_ratio
        amplitude = amplitude * (1.0 + np.sin(omega_theta * t))
    return _scalar_or_array(amplitude)


def inlet_value(inlet: InletForcing, t: float):
    """Dirichlet inlet velocity at time t (one value per member for batched theta)."""
    amplitude = forcing_amplitude(inlet, t)
    if inlet.kind == ForcingKind.BURGERS_PHASE_AMPLITUDE:
        phase = inlet.theta[..., 1]
        value = inlet.u0 * (1.0 + amplitude * np.sin(inlet.omega * t + phase))
    else:
        value = inlet.u0 * (1.0 + amplitude * np.sin(inlet.omega * t))
    return _scalar_or_array(value)
