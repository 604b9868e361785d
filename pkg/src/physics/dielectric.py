"""Debye and static permittivities of the chromophore's surroundings."""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np

from src.constants import MEDIA_PRESETS_PATH
from src.errors import InvalidParameterError
from src.utils.loaders import load_json_file

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DebyeDielectric:
    """Single-relaxation-time medium: eps(w) = eps_inf + (eps_static - eps_inf) / (1 - i w tau_D)."""

    eps_static: float
    eps_inf: float
    tau_D: float  # ps

    def __post_init__(self):
        if not self.eps_static >= self.eps_inf >= 1.0:
            raise InvalidParameterError(
                f"Debye medium needs eps_static >= eps_inf >= 1, got "
                f"eps_static={self.eps_static}, eps_inf={self.eps_inf}")
        if not self.tau_D > 0:
            raise InvalidParameterError(f"Debye relaxation time must be positive, got {self.tau_D} ps")

    @classmethod
    def from_refractive_index(cls, eps_static, refractive_index, tau_D):
        return cls(eps_static, refractive_index ** 2, tau_D)

    def permittivity(self, omega):
        return self.eps_inf + (self.eps_static - self.eps_inf) / (1.0 - 1j * omega * self.tau_D)

    @property
    def high_frequency(self):
        return StaticDielectric(self.eps_inf)

    @property
    def static_limit(self):
        return StaticDielectric(self.eps_static)


@dataclass(frozen=True)
class StaticDielectric:
    eps: float

    def __post_init__(self):
        if not self.eps >= 1.0:
            raise InvalidParameterError(f"static dielectric constant must be >= 1, got {self.eps}")

    def permittivity(self, omega):
        return self.eps + 0j + 0.0 * np.asarray(omega)


Dielectric = Union[DebyeDielectric, StaticDielectric]

VACUUM = StaticDielectric(1.0)
WATER = DebyeDielectric(78.3, 4.21, 8.2)
THF = DebyeDielectric(8.08, 2.18, 3.0)
PROTEIN = DebyeDielectric(15.0, 2.0, 10000.0)
BOUND_WATER = DebyeDielectric(40.0, 4.21, 40.0)


def check_omega(omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0) or np.any(np.isnan(omega)):
        bad = omega[(omega < 0) | np.isnan(omega)].flat[0]
        raise InvalidParameterError(f"angular frequency must be >= 0, got {bad} rad/ps")
    return omega


def permittivity(d, omega):
    """Complex permittivity of `d` at angular frequency omega (rad/ps); Im >= 0."""
    w = check_omega(omega)
    value = d.permittivity(w)
    return complex(value) if np.ndim(value) == 0 else value


def relaxation_rates(d) -> Tuple[float, ...]:
    """Characteristic rates of a medium (rad/ps); a static medium has none.

    The second rate is the longitudinal relaxation rate eps_s / (eps_i tau_D).
    """
    if isinstance(d, StaticDielectric):
        return ()
    return (1.0 / d.tau_D, d.eps_static / (d.eps_inf * d.tau_D))


def medium_from_dict(name, entry):
    """Build a dielectric from one preset entry ({eps} or {eps_static, eps_inf, tau_D_ps})."""
    try:
        if "eps" in entry:
            return StaticDielectric(float(entry["eps"]))
        return DebyeDielectric(float(entry["eps_static"]), float(entry["eps_inf"]),
                               float(entry["tau_D_ps"]))
    except KeyError as e:
        raise InvalidParameterError(f"medium preset '{name}' is missing '{e.args[0]}'")


def load_media_presets(path=MEDIA_PRESETS_PATH) -> Dict[str, Dielectric]:
    """Named dielectric presets from the media JSON file."""
    raw = load_json_file(path)
    media = raw.get("media", raw)
    presets = {name: medium_from_dict(name, entry) for name, entry in media.items()}
    defaulted = [name for name, entry in media.items() if entry.get("is_default_guess")]
    if defaulted:
        logger.debug("presets flagged as default guesses: %s", ", ".join(defaulted))
    return presets
