"""Run configuration: a flat YAML mapping plus --key value overrides from the command line."""
import logging
from dataclasses import asdict, dataclass, fields
from typing import Optional, get_type_hints

import numpy as np

from src.constants import DEFAULT_RTOL
from src.dynamics.decoherence import PRINTED, TwoLevelState
from src.dynamics.solvation import DERIVATIVE
from src.errors import ConfigError, InvalidParameterError
from src.physics.dielectric import DebyeDielectric, StaticDielectric, load_media_presets
from src.spectral.density import SpectralDensity
from src.spectral.environment import (BOUND_LAYER_THICKNESS, EnvironmentModel, Model1, Model2, Model3, Model4,
                                      Model5, ThreeComponentEnvironment)
from src.spectral.lorentzian import lorentzian_params
from src.spectral.models import model_density, three_component_density
from src.utils.loaders import load_yaml_file

logger = logging.getLogger(__name__)

THREE_COMPONENT = "three_component"
MODELS = ("1", "2", "3", "4", "5", THREE_COMPONENT)
SPACINGS = ("log", "linear")
SPECTRAL_SOURCES = ("model", "lorentzian")
NONE_WORDS = ("", "none", "null", "~")

# Default frequency grid spans these multiples of the slowest and fastest rates.
OMEGA_LOW_FACTOR = 1e-4
OMEGA_HIGH_FACTOR = 1e3


@dataclass
class RunConfig:
    model: str = THREE_COMPONENT
    a_angstrom: float = 3.0
    b_angstrom: float = 10.0
    c_angstrom: Optional[float] = None
    delta_mu_debye: float = 1.0
    eps_cavity: float = 1.0
    protein_eps_const: float = 2.0
    solvent_preset: str = "water"
    solvent_eps_static: Optional[float] = None
    solvent_eps_inf: Optional[float] = None
    solvent_tau_ps: Optional[float] = None
    protein_eps_static: float = 15.0
    protein_eps_inf: float = 2.0
    protein_tau_ps: float = 10000.0
    bound_eps_static: float = 40.0
    bound_eps_inf: float = 4.21
    bound_tau_ps: float = 40.0
    temperature_K: float = 300.0
    omega_min: Optional[float] = None
    omega_max: Optional[float] = None
    omega_points: int = 400
    omega_spacing: str = "log"
    t_min: float = 1e-3
    t_max: float = 10.0
    t_points: int = 40
    t_spacing: str = "log"
    rtol: float = DEFAULT_RTOL
    epsilon_cm1: float = 20000.0
    amp_ground: float = 1.0
    amp_excited: float = 1.0
    delta_cm1: float = 10.0
    stokes_convention: str = PRINTED
    spectral_source: str = "model"
    seed: int = 0

    def to_dict(self):
        return asdict(self)

    # --- Derived objects ---

    @property
    def is_three_component(self):
        return self.model == THREE_COMPONENT

    @property
    def c_resolved(self):
        return self.c_angstrom if self.c_angstrom is not None else self.b_angstrom + BOUND_LAYER_THICKNESS

    def solvent(self):
        explicit = (self.solvent_eps_static, self.solvent_eps_inf, self.solvent_tau_ps)
        if any(v is not None for v in explicit):
            if any(v is None for v in explicit):
                raise ConfigError("solvent_eps_static", "solvent_eps_static, solvent_eps_inf and solvent_tau_ps "
                                                        "must be given together")
            return DebyeDielectric(*explicit)
        presets = load_media_presets()
        if self.solvent_preset not in presets:
            raise ConfigError("solvent_preset", f"unknown preset '{self.solvent_preset}' "
                                                f"(choose from {', '.join(sorted(presets))})")
        return presets[self.solvent_preset]

    def protein(self):
        return DebyeDielectric(self.protein_eps_static, self.protein_eps_inf, self.protein_tau_ps)

    def bound(self):
        return DebyeDielectric(self.bound_eps_static, self.bound_eps_inf, self.bound_tau_ps)

    def environment(self):
        """ThreeComponentEnvironment or the EnvironmentModel of the selected variant."""
        cavity = StaticDielectric(self.eps_cavity)
        a, b = self.a_angstrom, self.b_angstrom
        if self.is_three_component:
            return ThreeComponentEnvironment(self.protein(), self.bound(), self.solvent(), a, b, self.c_resolved,
                                             self.delta_mu_debye)
        constant_protein = StaticDielectric(self.protein_eps_const)
        variant = {
            "1": lambda: Model1(a, cavity, self.solvent()),
            "2": lambda: Model2(a, cavity, self.protein()),
            "3": lambda: Model3(b, constant_protein, self.solvent()),
            "4": lambda: Model4(a, b, self.protein(), self.solvent(), cavity),
            "5": lambda: Model5(b, self.c_resolved, constant_protein, self.bound(), self.solvent()),
        }[self.model]()
        return EnvironmentModel(variant, self.delta_mu_debye)

    def spectral_density(self, env=None):
        env = env if env is not None else self.environment()
        if self.spectral_source == "lorentzian":
            return SpectralDensity.from_lorentzian(lorentzian_params(env), "three-component lorentzian")
        if self.is_three_component:
            return three_component_density(env)
        return model_density(env)

    def omega_grid(self, rates):
        lo = self.omega_min if self.omega_min is not None else OMEGA_LOW_FACTOR * min(rates)
        hi = self.omega_max if self.omega_max is not None else OMEGA_HIGH_FACTOR * max(rates)
        if not hi > lo:
            raise ConfigError("omega_max", f"must exceed omega_min ({hi} <= {lo})")
        return _grid(lo, hi, self.omega_points, self.omega_spacing)

    def time_grid(self):
        return _grid(self.t_min, self.t_max, self.t_points, self.t_spacing)

    def state(self):
        return TwoLevelState.normalized(self.amp_ground, self.amp_excited, self.epsilon_cm1)

    # --- Validation ---

    def validate(self):
        """Re-check every downstream invariant so bad values fail before any computation."""
        choices = {"model": MODELS, "omega_spacing": SPACINGS, "t_spacing": SPACINGS,
                   "stokes_convention": (PRINTED, DERIVATIVE), "spectral_source": SPECTRAL_SOURCES}
        for key, allowed in choices.items():
            if getattr(self, key) not in allowed:
                raise ConfigError(key, f"must be one of {', '.join(allowed)}, got '{getattr(self, key)}'")
        if self.spectral_source == "lorentzian" and not self.is_three_component:
            raise ConfigError("spectral_source", f"'lorentzian' requires model '{THREE_COMPONENT}'")
        for key in ("omega_points", "t_points"):
            if getattr(self, key) < 2:
                raise ConfigError(key, "need at least 2 points")
        if not 0 < self.rtol < 1:
            raise ConfigError("rtol", f"must lie in (0, 1), got {self.rtol}")
        if self.temperature_K < 0:
            raise ConfigError("temperature_K", f"must be >= 0, got {self.temperature_K}")
        if self.t_min < 0:
            raise ConfigError("t_min", f"must be >= 0, got {self.t_min}")
        if self.t_spacing == "log" and self.t_min == 0:
            raise ConfigError("t_min", "log spacing needs t_min > 0")
        if not self.t_max > self.t_min:
            raise ConfigError("t_max", f"must exceed t_min ({self.t_max} <= {self.t_min})")
        for key in ("omega_min", "omega_max"):
            value = getattr(self, key)
            if value is not None and not value > 0:
                raise ConfigError(key, f"must be positive, got {value}")
        if not self.delta_cm1 > 0:
            raise ConfigError("delta_cm1", f"must be positive, got {self.delta_cm1}")
        _checked("eps_cavity", lambda: StaticDielectric(self.eps_cavity))
        _checked("protein_eps_const", lambda: StaticDielectric(self.protein_eps_const))
        _checked("protein_eps_static", self.protein)
        _checked("bound_eps_static", self.bound)
        _checked("solvent_eps_static", self.solvent)
        _checked("amp_ground", self.state)
        if self.delta_mu_debye < 0:
            raise ConfigError("delta_mu_debye", f"must be >= 0, got {self.delta_mu_debye}")
        if not self.a_angstrom > 0:
            geometry_key = "a_angstrom"
        elif self.c_angstrom is not None and not self.c_angstrom > self.b_angstrom:
            geometry_key = "c_angstrom"
        else:
            geometry_key = "b_angstrom"
        return _checked(geometry_key, self.environment)


def _grid(lo, hi, points, spacing):
    if spacing == "log":
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


def _checked(key, build):
    try:
        return build()
    except ConfigError:
        raise
    except InvalidParameterError as e:
        raise ConfigError(key, str(e))


_TYPES = get_type_hints(RunConfig)
KNOWN_KEYS = tuple(f.name for f in fields(RunConfig))


def coerce_value(key, value):
    """Convert a YAML or command-line value to the declared type of `key`."""
    if key not in _TYPES:
        raise ConfigError(key, "unknown key")
    declared = _TYPES[key]
    optional = getattr(declared, "__args__", None) is not None and type(None) in declared.__args__
    target = next(t for t in declared.__args__ if t is not type(None)) if optional else declared
    if value is None or (isinstance(value, str) and value.strip().lower() in NONE_WORDS):
        if optional:
            return None
        raise ConfigError(key, "a value is required")
    try:
        if target is int:
            number = float(value)
            if not number.is_integer():
                raise ValueError
            return int(number)
        if target is float:
            if isinstance(value, bool):
                raise ValueError
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"expected {target.__name__}, got {value!r}")


def parse_overrides(tokens):
    """['--key', 'value', '--other=value'] -> {'key': 'value', 'other': 'value'}."""
    overrides = {}
    tokens = list(tokens)
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if not token.startswith("--"):
            raise ConfigError(token, "expected an option of the form --key value")
        if "=" in token:
            key, value = token[2:].split("=", 1)
            i += 1
        else:
            if i + 1 >= len(tokens):
                raise ConfigError(token[2:], "missing value")
            key, value = token[2:], tokens[i + 1]
            i += 2
        overrides[key.replace("-", "_")] = value
    return overrides


def load_run_config(path=None, overrides=None):
    """Defaults, then the flat YAML file at `path`, then `overrides`; validated."""
    values = {}
    if path is not None:
        raw = load_yaml_file(path)
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ConfigError("*", f"'{path}' must contain a flat key: value mapping")
        for key, value in raw.items():
            if isinstance(value, (dict, list)):
                raise ConfigError(key, "nested values are not supported")
            values[key] = value
    values.update(overrides or {})
    coerced = {key: coerce_value(key, value) for key, value in values.items()}
    config = RunConfig(**coerced)
    config.validate()
    logger.info("resolved configuration with %d explicit keys", len(coerced))
    return config
