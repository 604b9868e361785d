"""Solvation observables: time-dependent Stokes shift, hydration correlation and echo peak shift."""
import logging
import math

import pandas as pd

from src.constants import DEFAULT_RTOL, HBAR_CM1_PS
from src.dynamics.decoherence import (PRINTED, check_time, use_closed_form, decoherence_gamma,
                                      evolve_coherence, gaussian_time, phase_shift)
from src.dynamics.quadrature import (fourier_tail, frequency_cutoff, integrate_panels, integrate_smooth,
                                     oscillation_edge)
from src.errors import InvalidParameterError
from src.spectral.density import check_decaying_tail, reorganization_energy

logger = logging.getLogger(__name__)

DERIVATIVE = "derivative"
TRAJECTORY_COLUMNS = ["t_ps", "theta", "gamma", "abs_rho12", "nu_cm1", "C"]


def relaxation_integral(J, t, rtol=DEFAULT_RTOL, method="auto"):
    """int_0^inf (J(w) / w) cos(w t) dw in rad/ps; equals E_R / hbar at t = 0."""
    check_time(t)
    if use_closed_form(J, method):
        return sum(term.reorganization_energy / HBAR_CM1_PS * math.exp(-t / term.tau)
                   for term in J.lorentzian)
    check_decaying_tail(J)

    def weight(w):
        return J(w) / w if w > 0 else 0.0

    total = integrate_smooth(weight, J.breakpoints, rtol=rtol)
    if t == 0:
        return total
    omega_max = frequency_cutoff(J.omega_scale, t)
    edge, half_periods = oscillation_edge(t, omega_max)
    head = integrate_panels(lambda w: weight(w) * math.cos(w * t), 0.0, edge,
                            list(J.breakpoints) + half_periods, rtol=rtol, epsabs=1e-3 * rtol * total, t=t)
    tail = fourier_tail(weight, edge, t, "cos", scale=total, rtol=rtol)
    return head + tail


def stokes_shift_nu(J, epsilon, t, convention=PRINTED, rtol=DEFAULT_RTOL, method="auto"):
    """Instantaneous transition energy nu(t) in cm^-1.

    "printed": nu = eps - E_R - hbar int (J/w) cos(wt) dw, so nu(0) = eps - 2 E_R.
    "derivative": nu = eps - hbar d(theta)/dt = eps - E_R + hbar int (J/w) cos(wt) dw, so nu(0) = eps.
    Both relax to eps - E_R.
    """
    e_r = reorganization_energy(J, use_closed_form=use_closed_form(J, method))
    relaxing = HBAR_CM1_PS * relaxation_integral(J, t, rtol=rtol, method=method)
    if convention == PRINTED:
        return epsilon - e_r - relaxing
    if convention == DERIVATIVE:
        return epsilon - e_r + relaxing
    raise InvalidParameterError(f"convention must be '{PRINTED}' or '{DERIVATIVE}', got {convention!r}")


def hydration_correlation(J, t, rtol=DEFAULT_RTOL, method="auto"):
    """Normalised solvation correlation C(t) = (hbar / E_R) int (J/w) cos(wt) dw, C(0) = 1."""
    check_time(t)
    if use_closed_form(J, method):
        e_r = J.lorentzian.reorganization_energy
        if e_r == 0:
            raise InvalidParameterError("reorganisation energy is zero; C(t) is undefined")
        return sum(term.reorganization_energy / e_r * math.exp(-t / term.tau) for term in J.lorentzian)
    norm = relaxation_integral(J, 0.0, rtol=rtol, method="quadrature")
    if norm == 0:
        raise InvalidParameterError("reorganisation energy is zero; C(t) is undefined")
    if t == 0:
        return 1.0
    return relaxation_integral(J, t, rtol=rtol, method="quadrature") / norm


def echo_peak_shift(J, temperature_k, t, rtol=DEFAULT_RTOL):
    """Three-pulse echo peak shift S(t) = tau_g C(t) / sqrt(pi) in ps, valid at long population times."""
    tau_g = gaussian_time(J, temperature_k, rtol=rtol).preferred
    return tau_g / math.sqrt(math.pi) * hydration_correlation(J, t, rtol=rtol)


def trajectory(state, J, temperature_k, times, convention=PRINTED, rtol=DEFAULT_RTOL):
    """theta, Gamma, |rho_12|, nu and C on a time grid."""
    rows = []
    for t in times:
        t = float(t)
        theta = phase_shift(J, t, rtol=rtol)
        gamma = decoherence_gamma(J, t, temperature_k, rtol=rtol)
        point = evolve_coherence(state, t, theta, gamma)
        rows.append({
            "t_ps": t,
            "theta": theta,
            "gamma": gamma,
            "abs_rho12": abs(point.rho12),
            "nu_cm1": stokes_shift_nu(J, state.epsilon, t, convention=convention, rtol=rtol),
            "C": hydration_correlation(J, t, rtol=rtol),
        })
    logger.info("computed %d trajectory points", len(rows))
    return pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS)
