"""Qualitative dynamical regime of a two-level system coupled to an ohmic bath."""
import logging
import math
from dataclasses import dataclass
from enum import Enum

from src.constants import HBAR_CM1_PS
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)

ADIABATIC_RATIO = 0.1


class Regime(str, Enum):
    COHERENT = "coherent"
    INCOHERENT = "incoherent"
    LOCALIZED = "localized"
    BOUNDARY = "boundary"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class RegimeClassification:
    regime: Regime
    note: str = ""


def classify_regime(alpha, temperature_k, delta_cm1, omega_c):
    """Label the T = 0, Delta << hbar w_c spin-boson regime from the coupling alpha.

    alpha < 1/2 damped oscillations, 1/2 < alpha < 1 incoherent decay, alpha > 1
    localisation; exactly 1/2 or 1 is reported as boundary. Outside that limit no
    closed rule exists and the result is indeterminate.
    """
    for name, value in (("alpha", alpha), ("temperature", temperature_k), ("delta", delta_cm1),
                        ("omega_c", omega_c)):
        if value < 0 or math.isnan(value):
            raise InvalidParameterError(f"{name} must be non-negative, got {value}")
    if omega_c == 0:
        return RegimeClassification(Regime.INDETERMINATE, "no bath cutoff frequency")
    ratio = delta_cm1 / (HBAR_CM1_PS * omega_c)
    if ratio >= ADIABATIC_RATIO:
        return RegimeClassification(
            Regime.INDETERMINATE,
            f"Delta / hbar w_c = {ratio:.3g}: numerical studies report coherent oscillations "
            "persisting to large alpha here; no closed-form criterion")
    if temperature_k > 0:
        return RegimeClassification(
            Regime.INDETERMINATE,
            f"T = {temperature_k:g} K: thermal fluctuations shift the alpha thresholds")
    if alpha in (0.5, 1.0):
        return RegimeClassification(Regime.BOUNDARY, f"alpha = {alpha:g} sits on a regime boundary")
    if alpha < 0.5:
        return RegimeClassification(Regime.COHERENT, "damped Rabi oscillations")
    if alpha < 1.0:
        return RegimeClassification(Regime.INCOHERENT, "incoherent relaxation")
    return RegimeClassification(Regime.LOCALIZED, "localised in the initial state")


def relevant_component(lorentzian_sum, delta_cm1):
    """Label of the term whose relaxation rate lies closest (on a log scale) to Delta / hbar."""
    if not len(lorentzian_sum):
        raise InvalidParameterError("empty Lorentzian sum")
    if delta_cm1 <= 0:
        raise InvalidParameterError(f"delta must be positive, got {delta_cm1} cm^-1")
    target = math.log(delta_cm1 / HBAR_CM1_PS)
    best = min(lorentzian_sum.terms, key=lambda term: abs(math.log(term.rate) - target))
    return best.label
