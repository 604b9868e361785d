"""Sums of Lorentzian (Debye-like) spectral densities and their dielectric parameters.

Each term contributes alpha * w / (1 + (w tau)^2): ohmic with coupling alpha
below 1/tau, decaying as alpha / (w tau^2) above it.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from src.constants import HBAR_CM1_PS
from src.errors import InvalidParameterError
from src.physics.dielectric import check_omega
from src.physics.reaction_field import shielding_factor
from src.physics.units import dipole_prefactor

logger = logging.getLogger(__name__)

PROTEIN = "protein"
BOUND = "bound"
SOLVENT = "solvent"
COMPONENT_LABELS = (PROTEIN, BOUND, SOLVENT)

SCALE_SEPARATION = 1e2


@dataclass(frozen=True)
class LorentzianTerm:
    alpha: float
    tau: float  # ps
    label: Optional[str] = None

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InvalidParameterError(f"coupling alpha must be >= 0, got {self.alpha}")
        if not self.tau > 0:
            raise InvalidParameterError(f"tau must be positive, got {self.tau} ps")

    @property
    def rate(self):
        return 1.0 / self.tau

    @property
    def reorganization_energy(self):
        """pi alpha hbar / (2 tau) in cm^-1."""
        return np.pi * self.alpha * HBAR_CM1_PS / (2.0 * self.tau)

    def evaluate(self, omega):
        return self.alpha * omega / (1.0 + (omega * self.tau) ** 2)


@dataclass(frozen=True)
class LorentzianSum:
    terms: Tuple[LorentzianTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        labels = [t.label for t in self.terms if t.label is not None]
        if len(labels) != len(set(labels)):
            raise InvalidParameterError(f"duplicate component labels: {labels}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]], labels=None):
        pairs = list(pairs)
        labels = list(labels) if labels is not None else [None] * len(pairs)
        return cls(tuple(LorentzianTerm(a, t, lab) for (a, t), lab in zip(pairs, labels)))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def evaluate(self, omega):
        w = np.asarray(omega, dtype=float)
        total = np.zeros_like(w)
        for term in self.terms:
            total = total + term.evaluate(w)
        return total if total.ndim else float(total)

    def term(self, label):
        for t in self.terms:
            if t.label == label:
                return t
        raise InvalidParameterError(f"no '{label}' component in Lorentzian sum "
                                    f"(labels: {[t.label for t in self.terms]})")

    def has(self, label):
        return any(t.label == label for t in self.terms)

    @property
    def rates(self):
        return tuple(t.rate for t in self.terms)

    @property
    def total_alpha(self):
        """Ohmic slope J'(0) = sum of alpha_j."""
        return float(sum(t.alpha for t in self.terms))

    @property
    def reorganization_energy(self):
        return float(sum(t.reorganization_energy for t in self.terms))


def eval_lorentzian(lorentzian_sum, omega):
    """sum_j alpha_j w / (1 + (w tau_j)^2) in rad/ps."""
    w = check_omega(omega)
    return lorentzian_sum.evaluate(w if w.ndim else float(w))


def scale_separation_diagnostics(lorentzian_sum, threshold=SCALE_SEPARATION):
    """Messages for adjacent relaxation times closer than `threshold`."""
    ordered = sorted(lorentzian_sum.terms, key=lambda t: t.tau, reverse=True)
    messages = []
    for slow, fast in zip(ordered, ordered[1:]):
        ratio = slow.tau / fast.tau
        if ratio < threshold:
            messages.append(f"tau_{slow.label or '?'} / tau_{fast.label or '?'} = {ratio:.3g} "
                            f"< {threshold:g}: Lorentzian peaks may merge")
    return messages


# --- Three-component environment ---

def relaxation_times(env):
    """(tau_p, tau_b, tau_s) in ps."""
    p, b, s = env.protein, env.bound, env.solvent
    eps_pi = p.eps_inf
    tau_p = p.tau_D * (2.0 * p.eps_inf + 1.0) / (2.0 * p.eps_static + 1.0)
    tau_s = s.tau_D * (2.0 * s.eps_inf + eps_pi) / (2.0 * s.eps_static + eps_pi)
    return tau_p, b.tau_D, tau_s


def _prefactors(env):
    return dipole_prefactor(env.delta_mu, env.a), dipole_prefactor(env.delta_mu, env.b)


def lorentzian_params(env):
    """Three labelled Lorentzian terms whose slopes match the closed-form J at low frequency."""
    p, b, s = env.protein, env.bound, env.solvent
    eps_pi = p.eps_inf
    tau_p, tau_b, tau_s = relaxation_times(env)
    p_a, p_b = _prefactors(env)
    shield = shielding_factor(eps_pi)

    alpha_p = p_a * 3.0 * tau_p * (p.eps_static - p.eps_inf) / (
        (2.0 * p.eps_static + 1.0) * (2.0 * p.eps_inf + 1.0))
    alpha_s = shield * p_b * 3.0 * eps_pi * tau_s * (s.eps_static - s.eps_inf) / (
        (2.0 * s.eps_static + eps_pi) * (2.0 * s.eps_inf + eps_pi))
    alpha_b = shield * p_b * 3.0 * env.shell_fraction * eps_pi * tau_b * (b.eps_static - b.eps_inf) * (
        b.eps_static ** 2 + 2.0 * s.eps_static ** 2) / (
        b.eps_static ** 2 * (2.0 * s.eps_static + eps_pi) ** 2)

    result = LorentzianSum((LorentzianTerm(alpha_p, tau_p, PROTEIN),
                            LorentzianTerm(alpha_b, tau_b, BOUND),
                            LorentzianTerm(alpha_s, tau_s, SOLVENT)))
    for message in scale_separation_diagnostics(result):
        logger.warning(message)
    return result


def printed_alpha_over_tau(env):
    """Peak heights alpha_x / tau_x (rad/ps) from the commonly quoted closed forms.

    They differ from lorentzian_params by a factor 2 (protein, solvent) and by the
    shielding and eps_p,i factors (bound water); kept for comparison only.
    """
    p, b, s = env.protein, env.bound, env.solvent
    eps_pi = p.eps_inf
    p_a, p_b = _prefactors(env)
    protein = 6.0 * p_a * (p.eps_static - p.eps_inf) / ((2.0 * p.eps_static + 1.0) * (2.0 * p.eps_inf + 1.0))
    solvent = 6.0 * p_b * (s.eps_static - s.eps_inf) / (
        (2.0 * s.eps_static + eps_pi) * (2.0 * s.eps_inf + eps_pi)) * shielding_factor(eps_pi)
    bound = 3.0 * p_b * env.shell_fraction * (b.eps_static ** 2 + 2.0 * s.eps_static ** 2) * (
        b.eps_static - b.eps_inf) / (b.eps_static ** 2 * (2.0 * s.eps_static + eps_pi) ** 2)
    return {PROTEIN: protein, BOUND: bound, SOLVENT: solvent}


def bound_dielectric_factor(env):
    """Dielectric part of alpha_b / alpha_s, expected to be of order eps_b,i / eps_b,s."""
    b, s = env.bound, env.solvent
    eps_p = env.protein.eps_inf
    return ((b.eps_static - b.eps_inf) / (s.eps_static - s.eps_inf)
            * (b.eps_static ** 2 + 2.0 * s.eps_static ** 2) * (2.0 * s.eps_inf + eps_p)
            / (b.eps_static ** 2 * (2.0 * s.eps_static + eps_p)))


def bound_to_solvent_ratio(env):
    """alpha_b / alpha_s = ((c - b) / b) * (tau_b / tau_s) * dielectric factor."""
    _, tau_b, tau_s = relaxation_times(env)
    return env.shell_fraction * (tau_b / tau_s) * bound_dielectric_factor(env)
