"""Closed-form spectral densities of the five continuum models.

J(w) = P_r * Im[bracket(w)], with P_r = (delta_mu)^2 / (2 pi eps0 r^3 hbar) and
r = a for Models 1, 2 and 4, r = b for Models 3 and 5.
"""
import logging

import numpy as np

from src.physics.dielectric import DebyeDielectric, check_omega
from src.physics.reaction_field import reaction_bracket, shielding_factor, single_interface_bracket
from src.physics.units import dipole_prefactor
from src.spectral.density import SpectralDensity
from src.spectral.environment import EnvironmentModel, Model1, Model2, Model3, Model4, Model5
from src.spectral.lorentzian import BOUND, PROTEIN, SOLVENT

logger = logging.getLogger(__name__)

TOTAL = "total"


def model_radius(variant):
    return variant.a if isinstance(variant, (Model1, Model2, Model4)) else variant.b


def model_bracket(variant, omega):
    """Dimensionless complex bracket of the selected model at omega (rad/ps)."""
    if isinstance(variant, Model1):
        return single_interface_bracket(variant.eps_cavity.permittivity(omega),
                                        variant.solvent.permittivity(omega))
    if isinstance(variant, Model2):
        return single_interface_bracket(variant.eps_cavity.permittivity(omega),
                                        variant.protein.permittivity(omega))
    if isinstance(variant, Model3):
        return single_interface_bracket(variant.protein.permittivity(omega),
                                        variant.solvent.permittivity(omega))
    if isinstance(variant, Model4):
        return reaction_bracket(variant.eps_cavity.permittivity(omega), variant.protein.permittivity(omega),
                                variant.solvent.permittivity(omega), variant.a, variant.b, omega=omega)
    if isinstance(variant, Model5):
        return reaction_bracket(variant.protein.permittivity(omega), variant.bound_water.permittivity(omega),
                                variant.solvent.permittivity(omega), variant.b, variant.c, omega=omega)
    raise TypeError(f"unknown environment model variant {type(variant).__name__}")


def j_model(m, omega):
    """J(w) in rad/ps for an EnvironmentModel."""
    w = check_omega(omega)
    prefactor = dipole_prefactor(m.delta_mu, model_radius(m.variant))
    values = prefactor * np.imag(model_bracket(m.variant, w))
    return float(values) if np.ndim(values) == 0 else values


def model_density(m):
    return SpectralDensity.closed_form(lambda w: j_model(m, w), m.rates, f"model {m.number}")


def solvent_term(m, omega, exact=True):
    """First-order (a/b)^3 solvent term of Model 4.

    exact=True keeps the frequency-dependent protein permittivity inside the
    shielding factor; exact=False freezes it at eps_p,i.
    """
    variant = m.variant
    if not isinstance(variant, Model4):
        raise TypeError("solvent_term needs a Model 4 environment")
    w = check_omega(omega)
    eps_c = variant.eps_cavity.permittivity(w)
    if exact:
        eps_p = variant.protein.permittivity(w)
    else:
        protein = variant.protein
        eps_p = protein.eps_inf if isinstance(protein, DebyeDielectric) else protein.eps
    eps_s = variant.solvent.permittivity(w)
    term = shielding_factor(eps_p, eps_c) * single_interface_bracket(eps_p, eps_s)
    values = dipole_prefactor(m.delta_mu, variant.b) * np.imag(term)
    return float(values) if np.ndim(values) == 0 else values


def bound_water_term(m, omega):
    """Exact bound-water contribution of Model 5: J5 - J3 for the same protein and solvent."""
    variant = m.variant
    if not isinstance(variant, Model5):
        raise TypeError("bound_water_term needs a Model 5 environment")
    without_shell = EnvironmentModel(Model3(variant.b, variant.protein, variant.solvent), m.delta_mu)
    return j_model(m, omega) - j_model(without_shell, omega)


def j_three_component(env, omega):
    """Protein, bound-water and solvent parts of J(w) and their total (rad/ps).

    The protein part is Model 2 for the cavity; the outer environment is Model 5
    at the protein surface seen through the shielding factor of the protein's
    high-frequency dielectric. The bound part is the exact shell contribution and
    can dip below zero where the shell screens the solvent; the total cannot.
    """
    w = check_omega(omega)
    shield = shielding_factor(env.protein.eps_inf)
    protein = j_model(env.as_model2(), w)
    solvent = shield * j_model(env.as_model3(), w)
    if env.c > env.b:
        bound = shield * bound_water_term(env.as_model5(), w)
    else:
        bound = np.zeros_like(np.asarray(solvent, dtype=float))
    return {PROTEIN: protein, BOUND: bound, SOLVENT: solvent, TOTAL: protein + bound + solvent}


def three_component_density(env):
    return SpectralDensity.closed_form(lambda w: j_three_component(env, w)[TOTAL], env.rates,
                                       "three-component")
