"""Independent-boson dephasing: phase shift, decoherence exponent and the reduced density matrix.

For H = (eps/2) sigma_z + sigma_z sum_k g_k (b_k + b_k^dagger), starting from a
product of a|1> + b|2> and a thermal bath, the populations stay fixed and
    rho_12(t) = a* b exp(-i eps t / hbar + i theta(t) - Gamma(t, T)).
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.constants import DEFAULT_RTOL, HBAR_CM1_PS
from src.errors import DivergentIntegralError, InvalidParameterError
from src.physics.units import coth_weight, energy_to_angular_frequency, thermal_coth, thermal_energy
from src.spectral.density import check_decaying_tail, reorganization_energy
from src.dynamics.quadrature import (fourier_tail, frequency_cutoff, integrate_panels, oscillation_edge)

logger = logging.getLogger(__name__)

HIGH_T_FACTOR = 5.0
WEAK_COUPLING = 0.1
_SERIES_BELOW = 1e-3

PRINTED = "printed"
EXACT = "exact"


def check_time(t):
    if not t >= 0:
        raise InvalidParameterError(f"time must be >= 0, got {t} ps")


def use_closed_form(J, method):
    if method not in ("auto", "quadrature"):
        raise InvalidParameterError(f"method must be 'auto' or 'quadrature', got {method!r}")
    return method == "auto" and J.lorentzian is not None


def _one_minus_cos(x):
    """1 - cos(x) without cancellation."""
    return 2.0 * math.sin(0.5 * x) ** 2


def _x_minus_sin(x):
    """x - sin(x) without cancellation."""
    if x < _SERIES_BELOW:
        return x ** 3 / 6.0 - x ** 5 / 120.0
    return x - math.sin(x)


# --- Phase shift ---

def phase_shift(J, t, rtol=DEFAULT_RTOL, method="auto"):
    """theta(t) = int_0^inf J(w) [w t - sin(w t)] / w^2 dw (dimensionless)."""
    check_time(t)
    if t == 0:
        return 0.0
    if use_closed_form(J, method):
        return float(sum(0.5 * math.pi * term.alpha * (t / term.tau - 1.0 + math.exp(-t / term.tau))
                         for term in J.lorentzian))
    check_decaying_tail(J)
    omega_max = frequency_cutoff(J.omega_scale, t)
    edge, half_periods = oscillation_edge(t, omega_max)
    points = list(J.breakpoints) + half_periods

    def head(w):
        return J(w) * _x_minus_sin(w * t) / (w * w) if w > 0 else 0.0

    value = integrate_panels(head, 0.0, edge, points, rtol=rtol, t=t)
    smooth = t * integrate_panels(lambda w: J(w) / w, edge, math.inf, J.breakpoints, rtol=rtol, t=t)
    oscillating = fourier_tail(lambda w: J(w) / (w * w), edge, t, "sin", scale=max(value, smooth), rtol=rtol)
    return value + smooth - oscillating


# --- Decoherence exponent ---

def decoherence_gamma(J, t, temperature_k, rtol=DEFAULT_RTOL):
    """Gamma(t, T) = int_0^inf J(w) coth(hbar w / 2 k_B T) (1 - cos w t) / w^2 dw."""
    check_time(t)
    thermal = coth_weight(temperature_k)
    if t == 0:
        return 0.0
    check_decaying_tail(J)

    def weight(w):
        return J(w) * thermal(w) / (w * w)

    omega_max = frequency_cutoff(J.omega_scale, t)
    edge, half_periods = oscillation_edge(t, omega_max)
    points = list(J.breakpoints) + half_periods

    def head(w):
        return weight(w) * _one_minus_cos(w * t) if w > 0 else 0.0

    value = integrate_panels(head, 0.0, edge, points, rtol=rtol, t=t)
    smooth = integrate_panels(weight, edge, math.inf, J.breakpoints, rtol=rtol, t=t)
    oscillating = fourier_tail(weight, edge, t, "cos", scale=max(value, smooth), rtol=rtol)
    return max(value + smooth - oscillating, 0.0)


# --- Coherence decay times ---

@dataclass(frozen=True)
class GaussianTime:
    """Short-time Gaussian decay time of the coherence.

    tau_g: from the quadrature of J coth up to `cutoff`.
    tau_g_high_t: hbar / sqrt(2 E_R k_B T), reported when k_B T > 5 hbar w_peak.
    """

    tau_g: float
    tau_g_high_t: Optional[float]
    cutoff: float

    @property
    def preferred(self):
        return self.tau_g_high_t if self.tau_g_high_t is not None else self.tau_g


def gaussian_time(J, temperature_k, rtol=DEFAULT_RTOL):
    """1 / tau_g^2 = int_0^inf J(w) coth(hbar w / 2 k_B T) dw, truncated at 1e3 times the fastest rate."""
    kt = thermal_energy(temperature_k).value
    cutoff = check_decaying_tail(J)
    thermal = coth_weight(temperature_k)

    def integrand(w):
        return J(w) * thermal(w) if w > 0 else 0.0

    inverse_sq = integrate_panels(integrand, 0.0, cutoff, J.breakpoints, rtol=rtol)
    if inverse_sq <= 0:
        raise DivergentIntegralError(f"spectral density '{J.label}' has no weight; tau_g undefined")
    logger.info("tau_g integral truncated at %.3g rad/ps", cutoff)
    tau_g = 1.0 / math.sqrt(inverse_sq)

    high_t = None
    if kt > HIGH_T_FACTOR * HBAR_CM1_PS * J.omega_scale:
        e_r = reorganization_energy(J)
        high_t = HBAR_CM1_PS / math.sqrt(2.0 * e_r * kt)
    return GaussianTime(tau_g, high_t, cutoff)


def exponential_time(alpha, temperature_k, convention=PRINTED):
    """Long-time exponential decoherence time tau_d.

    "printed": hbar / (2 alpha k_B T), the usual rule of thumb.
    "exact": hbar / (pi alpha k_B T), the asymptotic slope of Gamma(t, T) itself.
    """
    if not alpha > 0:
        raise InvalidParameterError(f"alpha must be positive, got {alpha}")
    kt = thermal_energy(temperature_k).value
    if kt == 0:
        raise InvalidParameterError("exponential decay time is undefined at T = 0")
    if convention == PRINTED:
        return HBAR_CM1_PS / (2.0 * alpha * kt)
    if convention == EXACT:
        return HBAR_CM1_PS / (math.pi * alpha * kt)
    raise InvalidParameterError(f"convention must be '{PRINTED}' or '{EXACT}', got {convention!r}")


# --- Reduced density matrix ---

@dataclass(frozen=True)
class TwoLevelState:
    amp_ground: complex
    amp_excited: complex
    epsilon: float  # cm^-1

    def __post_init__(self):
        norm = abs(self.amp_ground) ** 2 + abs(self.amp_excited) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidParameterError(f"|a|^2 + |b|^2 must be 1, got {norm:.15g}")

    @classmethod
    def normalized(cls, amp_ground, amp_excited, epsilon):
        norm = math.sqrt(abs(amp_ground) ** 2 + abs(amp_excited) ** 2)
        if norm == 0:
            raise InvalidParameterError("both amplitudes are zero")
        return cls(complex(amp_ground) / norm, complex(amp_excited) / norm, epsilon)


@dataclass(frozen=True)
class DensityMatrixPoint:
    t: float
    rho11: float
    rho22: float
    rho12: complex


def density_matrix(state, J, temperature_k, t, rtol=DEFAULT_RTOL):
    check_time(t)
    rho11 = abs(state.amp_ground) ** 2
    rho22 = abs(state.amp_excited) ** 2
    coherence = state.amp_ground.conjugate() * state.amp_excited
    if t == 0:
        return DensityMatrixPoint(0.0, rho11, rho22, complex(coherence))
    theta = phase_shift(J, t, rtol=rtol)
    gamma = decoherence_gamma(J, t, temperature_k, rtol=rtol)
    return evolve_coherence(state, t, theta, gamma)


def evolve_coherence(state, t, theta, gamma):
    """Density-matrix point for already computed theta(t) and Gamma(t, T)."""
    coherence = state.amp_ground.conjugate() * state.amp_excited
    phase = -energy_to_angular_frequency(state.epsilon) * t + theta
    return DensityMatrixPoint(t, abs(state.amp_ground) ** 2, abs(state.amp_excited) ** 2,
                              complex(coherence * np.exp(1j * phase - gamma)))


# --- Golden-rule dephasing ---

def dephasing_rate(J, delta_cm1, temperature_k):
    """1 / T2 = J(Delta / hbar) coth(Delta / 2 k_B T) in 1/ps."""
    if not delta_cm1 > 0:
        raise InvalidParameterError(f"delta must be positive, got {delta_cm1} cm^-1")
    omega = energy_to_angular_frequency(delta_cm1)
    j = J(omega)
    if j > WEAK_COUPLING * omega:
        logger.warning("J(Delta/hbar) = %.3g rad/ps is not small against Delta/hbar = %.3g rad/ps; "
                       "the golden-rule rate is outside its weak-coupling range", j, omega)
    return j * thermal_coth(omega, temperature_k)


