"""Evaluatable spectral densities J(w) and their reorganisation energy."""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from src.constants import HBAR_CM1_PS
from src.dynamics.quadrature import breakpoints_for, integrate_smooth
from src.errors import DivergentIntegralError, InvalidParameterError
from src.physics.dielectric import check_omega

logger = logging.getLogger(__name__)

CLOSED_FORM = "closed_form"
LORENTZIAN = "lorentzian"
TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    """J(w) in rad/ps for w >= 0.

    `rates` are the characteristic frequencies of the backing (rad/ps); they
    place quadrature breakpoints and grid limits.
    """

    evaluate_fn: Callable[[np.ndarray], np.ndarray]
    rates: Tuple[float, ...]
    backing: str = CLOSED_FORM
    label: str = ""
    lorentzian: Optional[object] = None
    grid: Optional[Tuple[np.ndarray, np.ndarray]] = field(default=None, repr=False)

    def __call__(self, omega):
        w = check_omega(omega)
        values = np.asarray(self.evaluate_fn(w), dtype=float)
        if values.ndim == 0:
            return 0.0 if w == 0 else float(values)
        return np.where(w == 0, 0.0, values)

    @property
    def omega_scale(self):
        return max(self.rates) if self.rates else 1.0

    @property
    def omega_low(self):
        return min(self.rates) if self.rates else 1.0

    @property
    def breakpoints(self):
        return breakpoints_for(self.rates)

    @classmethod
    def closed_form(cls, fn, rates, label=""):
        rates = tuple(sorted(r for r in rates if r > 0))
        return cls(fn, rates, CLOSED_FORM, label)

    @classmethod
    def from_lorentzian(cls, lorentzian_sum, label="lorentzian"):
        return cls(lorentzian_sum.evaluate, tuple(sorted(lorentzian_sum.rates)), LORENTZIAN, label,
                   lorentzian=lorentzian_sum)

    @classmethod
    def tabulated(cls, omega_k, j_k, label="tabulated"):
        """Linear interpolation on (omega_k, J_k); zero beyond the last grid point."""
        omega_k = np.asarray(omega_k, dtype=float)
        j_k = np.asarray(j_k, dtype=float)
        if omega_k.shape != j_k.shape or omega_k.ndim != 1 or omega_k.size < 2:
            raise InvalidParameterError("tabulated J needs two equal-length 1-D arrays of >= 2 points")
        if np.any(np.diff(omega_k) <= 0) or omega_k[0] < 0:
            raise InvalidParameterError("tabulated frequencies must be >= 0 and strictly increasing")
        if np.any(j_k < 0):
            raise InvalidParameterError("tabulated J must be non-negative")
        if omega_k[0] > 0:
            omega_k = np.concatenate(([0.0], omega_k))
            j_k = np.concatenate(([0.0], j_k))
        j_k = j_k.copy()
        j_k[0] = 0.0
        last = omega_k[-1]

        def evaluate(w):
            return np.where(w <= last, np.interp(w, omega_k, j_k), 0.0)

        peak = float(omega_k[int(np.argmax(j_k))]) or float(omega_k[1])
        return cls(evaluate, (peak, float(last)), TABULATED, label, grid=(omega_k, j_k))

    @classmethod
    def zero(cls, label="zero"):
        return cls(lambda w: np.zeros_like(np.asarray(w, dtype=float)), (), CLOSED_FORM, label)


def check_decaying_tail(J, omega_max=None):
    """Raise when J has not started to decay by omega_max (default 1e3 * fastest rate)."""
    omega_max = omega_max or 1e3 * J.omega_scale
    upper = J(omega_max)
    lower = J(omega_max / 10.0)
    if lower > 0 and upper >= lower:
        raise DivergentIntegralError(
            f"spectral density '{J.label}' does not decay: J({omega_max:g}) = {upper:.3e} "
            f">= J({omega_max / 10.0:g}) = {lower:.3e}")
    return omega_max


def reorganization_energy(J, rtol=1e-8, use_closed_form=True):
    """E_R = hbar * int_0^inf J(w)/w dw in cm^-1."""
    if use_closed_form and J.lorentzian is not None:
        return J.lorentzian.reorganization_energy
    check_decaying_tail(J)

    def integrand(w):
        return J(w) / w if w > 0 else 0.0

    value = integrate_smooth(integrand, J.breakpoints, rtol=rtol * 1e-2)
    logger.debug("reorganisation energy of %s by quadrature: %.6g cm^-1", J.label, HBAR_CM1_PS * value)
    return HBAR_CM1_PS * value
