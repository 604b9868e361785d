"""Unit system shared by every module.

Canonical units: energy in cm^-1, time in ps, angular frequency in rad/ps,
length in Angstrom, dipole in Debye, temperature in K.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.constants import (ANGSTROM_M, DEBYE_C_M, EPS0_F_PER_M, HBAR_CM1_PS, HC_J_CM, KB_CM1_PER_K,
                           MEV_CM1)
from src.errors import IncompatibleUnitsError, InvalidParameterError

logger = logging.getLogger(__name__)


class Dimension(str, Enum):
    ENERGY = "energy"
    TIME = "time"
    ANGULAR_FREQUENCY = "angular_frequency"
    LENGTH = "length"
    DIPOLE = "dipole"
    TEMPERATURE = "temperature"


class Unit(str, Enum):
    CM1 = "cm-1"
    MEV = "meV"
    JOULE = "J"
    PS = "ps"
    FS = "fs"
    NS = "ns"
    RAD_PER_PS = "rad/ps"
    ANGSTROM = "A"
    DEBYE = "D"
    KELVIN = "K"


# unit -> (dimension, size of one unit expressed in the canonical unit)
_UNIT_TABLE = {
    Unit.CM1: (Dimension.ENERGY, 1.0),
    Unit.MEV: (Dimension.ENERGY, MEV_CM1),
    Unit.JOULE: (Dimension.ENERGY, 1.0 / HC_J_CM),
    Unit.PS: (Dimension.TIME, 1.0),
    Unit.FS: (Dimension.TIME, 1e-3),
    Unit.NS: (Dimension.TIME, 1e3),
    Unit.RAD_PER_PS: (Dimension.ANGULAR_FREQUENCY, 1.0),
    Unit.ANGSTROM: (Dimension.LENGTH, 1.0),
    Unit.DEBYE: (Dimension.DIPOLE, 1.0),
    Unit.KELVIN: (Dimension.TEMPERATURE, 1.0),
}


@dataclass(frozen=True)
class Quantity:
    value: float
    unit: Unit

    def __post_init__(self):
        object.__setattr__(self, "unit", Unit(self.unit))

    @property
    def dimension(self):
        return _UNIT_TABLE[self.unit][0]


def convert(q, target):
    """Convert a Quantity to another unit of the same dimension."""
    target = Unit(target)
    src_dim, src_scale = _UNIT_TABLE[q.unit]
    tgt_dim, tgt_scale = _UNIT_TABLE[target]
    if src_dim != tgt_dim:
        raise IncompatibleUnitsError(q.unit.value, target.value)
    if q.unit == target:
        return Quantity(q.value, target)
    return Quantity(q.value * (src_scale / tgt_scale), target)


def thermal_energy(temperature_k):
    """k_B*T in cm^-1. T = 0 gives 0; callers treat coth as 1 there."""
    if temperature_k < 0:
        raise InvalidParameterError(f"temperature must be >= 0 K, got {temperature_k}")
    return Quantity(KB_CM1_PER_K * temperature_k, Unit.CM1)


def energy_to_angular_frequency(energy_cm1):
    return np.divide(energy_cm1, HBAR_CM1_PS)


def angular_frequency_to_energy(omega):
    return np.multiply(omega, HBAR_CM1_PS)


def dipole_prefactor(delta_mu_debye, radius_angstrom):
    """(delta_mu)^2 / (2 pi eps0 r^3) expressed as an angular frequency (rad/ps)."""
    if radius_angstrom <= 0:
        raise InvalidParameterError(f"radius must be positive, got {radius_angstrom} A")
    if delta_mu_debye < 0:
        raise InvalidParameterError(f"dipole change must be >= 0, got {delta_mu_debye} D")
    mu = delta_mu_debye * DEBYE_C_M
    r = radius_angstrom * ANGSTROM_M
    energy_j = mu * mu / (2.0 * np.pi * EPS0_F_PER_M * r ** 3)
    return energy_j / HC_J_CM / HBAR_CM1_PS


_COTH_SERIES_BELOW = 5e-4
_COTH_SATURATES_ABOVE = 20.0


def coth(x):
    """coth for x > 0, using the Laurent series near zero and 1 for large x."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    small = x < _COTH_SERIES_BELOW
    mid = (~small) & (x <= _COTH_SATURATES_ABOVE)
    xs = x[small]
    with np.errstate(divide="ignore"):
        out[small] = 1.0 / xs + xs / 3.0 - xs ** 3 / 45.0
    out[mid] = 1.0 / np.tanh(x[mid])
    return out if out.ndim else float(out)


def _coth_scalar(x):
    if x == 0.0:
        return math.inf
    if x < _COTH_SERIES_BELOW:
        return 1.0 / x + x / 3.0 - x ** 3 / 45.0
    if x > _COTH_SATURATES_ABOVE:
        return 1.0
    return 1.0 / math.tanh(x)


def coth_weight(temperature_k):
    """w -> coth(hbar*w / 2 k_B T) with k_B T fixed; scalars stay on the math fast path."""
    kt = thermal_energy(temperature_k).value
    if kt == 0.0:
        return lambda omega: np.ones_like(np.asarray(omega, dtype=float)) if np.ndim(omega) else 1.0
    scale = HBAR_CM1_PS / (2.0 * kt)

    def weight(omega):
        if np.ndim(omega):
            return coth(scale * np.asarray(omega, dtype=float))
        return _coth_scalar(scale * float(omega))

    return weight


def thermal_coth(omega, temperature_k):
    """coth(hbar*omega / 2 k_B T); identically 1 at T = 0."""
    return coth_weight(temperature_k)(omega)
