"""Convert multi-exponential solvation fits into Lorentzian spectral densities."""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from src.constants import HBAR_CM1_PS
from src.errors import InvalidParameterError
from src.spectral.lorentzian import LorentzianSum, LorentzianTerm

logger = logging.getLogger(__name__)

QUICK_COEFFICIENT = 0.25
EXACT_COEFFICIENT = 2.0 / (math.pi * HBAR_CM1_PS)


@dataclass(frozen=True)
class CouplingReport:
    """alpha_j = 2 E_R A_j tau_j / (pi hbar), with the 0.25 A_j E_R tau_j rule of thumb alongside."""

    reorganization_energy: float
    alphas: Tuple[float, ...]
    quick_estimates: Tuple[float, ...]
    taus: Tuple[float, ...]

    def __iter__(self):
        return iter(self.alphas)

    def __len__(self):
        return len(self.alphas)


def _check_energy(e_r):
    if e_r is None or not e_r > 0:
        raise InvalidParameterError(f"reorganisation energy must be positive, got {e_r} cm^-1")


def couplings_from_fit(e_r, fit):
    _check_energy(e_r)
    alphas = tuple(EXACT_COEFFICIENT * e_r * a * tau for a, tau in fit.components)
    quick = tuple(QUICK_COEFFICIENT * a * e_r * tau for a, tau in fit.components)
    return CouplingReport(float(e_r), alphas, quick, tuple(tau for _, tau in fit.components))


def lorentzian_from_fit(e_r, fit, labels=None):
    """Lorentzian sum whose C(t) reproduces the fitted decay and whose E_R equals e_r * sum(A_j)."""
    report = couplings_from_fit(e_r, fit)
    labels = list(labels) if labels is not None else [f"c{j + 1}" for j in range(len(report))]
    if len(labels) != len(report):
        raise InvalidParameterError(f"{len(labels)} labels for {len(report)} components")
    terms = tuple(LorentzianTerm(alpha, tau, label) for alpha, tau, label in zip(report.alphas, report.taus, labels))
    result = LorentzianSum(terms)
    logger.debug("Lorentzian sum from fit: E_R=%.6g cm^-1 over %d terms", result.reorganization_energy, len(result))
    return result
