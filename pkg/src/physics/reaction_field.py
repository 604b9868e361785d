"""Reaction field of a point dipole in a cavity / shell / bulk dielectric stack.

Only the l = 1 harmonic couples to a centred point dipole. The potential is
    cavity (r < a):      phi = (A_c r + B_c / r^2) cos(theta),  B_c = mu
    shell  (a < r < b):  phi = (A_p r + B_p / r^2) cos(theta)
    bulk   (r > b):      phi = (B_e / r^2) cos(theta)
and the reaction field inside the cavity is R = -A_c = chi * mu.
chi is kept in A^-3 as (2 / a^3) * bracket, the bracket being dimensionless.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.errors import InvalidParameterError, SingularConfigurationError
from src.physics.dielectric import Dielectric, check_omega, relaxation_rates
from src.physics.units import dipole_prefactor
from src.spectral.density import SpectralDensity

logger = logging.getLogger(__name__)

SINGULAR_RELATIVE = 1e-14
MAX_CONDITION = 1e14


@dataclass(frozen=True)
class ThreeRegionGeometry:
    cavity_radius_a: float
    shell_radius_b: float
    eps_cavity: Dielectric
    eps_shell: Dielectric
    eps_bulk: Dielectric

    def __post_init__(self):
        if not 0 < self.cavity_radius_a < self.shell_radius_b:
            raise InvalidParameterError(
                f"need 0 < a < b, got a={self.cavity_radius_a} A, b={self.shell_radius_b} A")

    def permittivities(self, omega):
        return (self.eps_cavity.permittivity(omega), self.eps_shell.permittivity(omega),
                self.eps_bulk.permittivity(omega))

    @property
    def rates(self):
        rates = set()
        for medium in (self.eps_cavity, self.eps_shell, self.eps_bulk):
            rates.update(relaxation_rates(medium))
        return tuple(sorted(rates))


@dataclass(frozen=True)
class DipoleSource:
    delta_mu: float  # Debye

    def __post_init__(self):
        if self.delta_mu < 0:
            raise InvalidParameterError(f"delta_mu must be >= 0, got {self.delta_mu} D")


def single_interface_bracket(eps_in, eps_out):
    """(eps_out - eps_in) / (2 eps_out + eps_in) for a sphere eps_in inside eps_out."""
    return (eps_out - eps_in) / (2.0 * eps_out + eps_in)


def shielding_factor(eps_shell, eps_cavity=1.0):
    """9 eps_p eps_c / (2 eps_p + eps_c)^2: first-order transmission of the outer field through the shell."""
    return 9.0 * eps_shell * eps_cavity / (2.0 * eps_shell + eps_cavity) ** 2


def reaction_bracket(eps_c, eps_p, eps_e, a, b, omega=None):
    """Dimensionless bracket of the two-interface reaction field; chi = (2 / a^3) * bracket."""
    a3 = a ** 3
    b3 = b ** 3
    numerator = (eps_p + 2.0 * eps_c) * (eps_e - eps_p) * a3 + (eps_p - eps_c) * (2.0 * eps_e + eps_p) * b3
    leading = (2.0 * eps_p + eps_c) * (2.0 * eps_e + eps_p) * b3
    denominator = 2.0 * (eps_p - eps_c) * (eps_e - eps_p) * a3 + leading
    bad = np.abs(denominator) < SINGULAR_RELATIVE * np.abs(leading)
    if np.any(bad):
        where = None
        if omega is not None:
            where = float(np.broadcast_to(np.asarray(omega, dtype=float), np.shape(bad))[bad].flat[0])
        raise SingularConfigurationError("reaction-field denominator vanishes", omega=where)
    return numerator / denominator


def chi_closed_form(g, omega):
    """chi(w) in A^-3 from the closed-form two-interface solution."""
    w = check_omega(omega)
    eps_c, eps_p, eps_e = g.permittivities(w)
    bracket = reaction_bracket(eps_c, eps_p, eps_e, g.cavity_radius_a, g.shell_radius_b, omega=w)
    chi = 2.0 * bracket / g.cavity_radius_a ** 3
    return complex(chi) if np.ndim(chi) == 0 else chi


def chi_linear_solve(g, omega):
    """chi(w) from the 4x4 boundary-condition system, solved with LAPACK (partial pivoting).

    Unknowns are scaled as x = (A_c a^3, A_p b^3, B_p, B_e) with mu = 1, which keeps
    every row O(1) even for b/a of 1e6.
    """
    w = check_omega(omega)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    n = w.size
    eps_c, eps_p, eps_e = (np.broadcast_to(np.asarray(e, dtype=complex), (n,))
                           for e in g.permittivities(w))
    q = (g.cavity_radius_a / g.shell_radius_b) ** 3

    m = np.zeros((n, 4, 4), dtype=complex)
    rhs = np.zeros((n, 4), dtype=complex)
    # potential continuous at r = a
    m[:, 0, 0] = 1.0
    m[:, 0, 1] = -q
    m[:, 0, 2] = -1.0
    rhs[:, 0] = -1.0
    # eps * dphi/dr continuous at r = a
    m[:, 1, 0] = eps_c
    m[:, 1, 1] = -eps_p * q
    m[:, 1, 2] = 2.0 * eps_p
    rhs[:, 1] = 2.0 * eps_c
    # potential continuous at r = b
    m[:, 2, 1] = 1.0
    m[:, 2, 2] = 1.0
    m[:, 2, 3] = -1.0
    # eps * dphi/dr continuous at r = b
    m[:, 3, 1] = eps_p
    m[:, 3, 2] = -2.0 * eps_p
    m[:, 3, 3] = 2.0 * eps_e

    condition = np.linalg.cond(m)
    worst = int(np.argmax(condition))
    if not np.isfinite(condition[worst]) or condition[worst] > MAX_CONDITION:
        raise SingularConfigurationError("boundary-condition system is singular",
                                         condition=float(condition[worst]), omega=float(w[worst]))
    try:
        x = np.linalg.solve(m, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError:
        raise SingularConfigurationError("boundary-condition system is singular",
                                         condition=float(condition[worst]), omega=float(w[worst]))
    chi = -x[:, 0] / g.cavity_radius_a ** 3
    return complex(chi[0]) if scalar else chi


def spectral_density_from_chi(src, chi_im, rates=(), label="reaction field"):
    """J(w) = 2 (delta_mu)^2 Im chi(w) in rad/ps, with chi_im returning Im chi in A^-3."""
    prefactor = dipole_prefactor(src.delta_mu, 1.0) / 2.0

    def evaluate(w):
        return prefactor * np.asarray(chi_im(w), dtype=float)

    return SpectralDensity.closed_form(evaluate, rates, label)


def reaction_field_density(src, g, label="reaction field"):
    """Spectral density of a dipole source in the given three-region geometry."""
    return spectral_density_from_chi(src, lambda w: np.imag(chi_closed_form(g, w)), g.rates, label)
