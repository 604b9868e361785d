"""Frequencies at which two Lorentzian components contribute equally to J(w)."""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from src.errors import NoCrossoverError
from src.spectral.lorentzian import BOUND, PROTEIN, SOLVENT

logger = logging.getLogger(__name__)

_SCAN_POINTS = 400


@dataclass(frozen=True)
class Crossover:
    """analytic: estimate from the ohmic/tail asymptotes; numeric: root of J_slow = J_fast."""

    slow: str
    fast: str
    analytic: float
    numeric: Optional[float]
    printed: float
    note: str = ""


def _log_difference(slow, fast):
    def f(log_w):
        w = math.exp(log_w)
        return (math.log(slow.alpha) - math.log1p((w * slow.tau) ** 2)
                - math.log(fast.alpha) + math.log1p((w * fast.tau) ** 2))
    return f


def numeric_crossover(slow, fast):
    """Lowest root of J_slow(w) = J_fast(w) by bisection on log w, or None if J never crosses."""
    lo = math.log(1e-2 / max(slow.tau, fast.tau))
    hi = math.log(1e2 / min(slow.tau, fast.tau))
    f = _log_difference(slow, fast)
    grid = np.linspace(lo, hi, _SCAN_POINTS)
    values = [f(x) for x in grid]
    for left, right, f_left, f_right in zip(grid, grid[1:], values, values[1:]):
        if f_right == 0.0 and f_left != 0.0:
            return math.exp(right)
        if f_left * f_right < 0:
            return math.exp(bisect(f, left, right, xtol=1e-14, rtol=1e-14))
    return None


def _crossover(lorentzian_sum, slow_label, fast_label, analytic_ratio, printed_ratio):
    for label in (slow_label, fast_label):
        if not lorentzian_sum.has(label):
            raise NoCrossoverError(f"Lorentzian sum has no '{label}' component")
    slow = lorentzian_sum.term(slow_label)
    fast = lorentzian_sum.term(fast_label)
    if slow.alpha == 0 or fast.alpha == 0:
        raise NoCrossoverError(f"'{slow_label}' or '{fast_label}' has zero coupling; "
                               "one component dominates at every frequency")
    analytic = math.sqrt(analytic_ratio(slow, fast)) / slow.tau
    printed = math.sqrt(printed_ratio(slow, fast)) / slow.tau
    numeric = numeric_crossover(slow, fast)
    note = ""
    if numeric is None:
        note = f"J_{slow_label} and J_{fast_label} never cross; one dominates everywhere"
        logger.warning(note)
    return Crossover(slow_label, fast_label, analytic, numeric, printed, note)


def crossover_protein_solvent(lorentzian_sum):
    """w_co = (1 / tau_p) sqrt(alpha_p / alpha_s)."""
    def ratio(slow, fast):
        return slow.alpha / fast.alpha
    return _crossover(lorentzian_sum, PROTEIN, SOLVENT, ratio, ratio)


def crossover_bound_bulk(lorentzian_sum):
    """w_co = (1 / tau_b) sqrt(alpha_b / alpha_s).

    This is where the bound-water tail alpha_b / (w tau_b^2) meets the solvent's
    linear region alpha_s w. The commonly quoted inverse ratio is kept in `printed`.
    """
    return _crossover(lorentzian_sum, BOUND, SOLVENT,
                      lambda slow, fast: slow.alpha / fast.alpha,
                      lambda slow, fast: fast.alpha / slow.alpha)
