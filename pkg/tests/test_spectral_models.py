import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.stats import linregress

from src.errors import InvalidParameterError
from src.physics.dielectric import BOUND_WATER, PROTEIN, VACUUM, WATER, StaticDielectric
from src.spectral.environment import (EnvironmentModel, Model1, Model2, Model3, Model4, Model5,
                                      ThreeComponentEnvironment)
from src.spectral.lorentzian import BOUND, PROTEIN as PROTEIN_LABEL, SOLVENT
from src.spectral.models import TOTAL, bound_water_term, j_model, j_three_component, solvent_term

GLASS = StaticDielectric(2.0)


def _all_models():
    return [EnvironmentModel(Model1(3.0)),
            EnvironmentModel(Model2(3.0)),
            EnvironmentModel(Model3(10.0, GLASS, WATER)),
            EnvironmentModel(Model4(3.0, 10.0)),
            EnvironmentModel(Model5(10.0, 14.5, GLASS, BOUND_WATER, WATER))]


@pytest.mark.parametrize("m", _all_models(), ids=lambda m: f"model{m.number}")
def test_spectral_density_is_non_negative_and_vanishes_at_zero(m):
    omega = np.geomspace(1e-7, 1e4, 300)
    assert np.all(j_model(m, omega) >= 0)
    assert j_model(m, 0.0) == 0.0


def test_model_four_reduces_to_model_two():
    omega = np.geomspace(0.1, 10.0, 40) / PROTEIN.tau_D
    j4 = j_model(EnvironmentModel(Model4(3.0, 3000.0)), omega)
    j2 = j_model(EnvironmentModel(Model2(3.0)), omega)
    assert np.max(np.abs(j4 - j2) / j2) < 1e-5


@pytest.mark.parametrize("b", [3.5, 10.0, 300.0])
def test_model_four_with_solvent_shell_is_model_one(b):
    omega = np.geomspace(1e-5, 1e3, 60)
    j4 = j_model(EnvironmentModel(Model4(3.0, b, WATER, WATER, VACUUM)), omega)
    j1 = j_model(EnvironmentModel(Model1(3.0, VACUUM, WATER)), omega)
    assert_allclose(j4, j1, rtol=1e-12)


def test_model_four_first_order_residual_is_cubic():
    omega = np.geomspace(1e-4, 10.0, 30)
    j2 = j_model(EnvironmentModel(Model2(3.0)), omega)

    def residual(b):
        m = EnvironmentModel(Model4(3.0, b))
        return np.sum(np.abs(j_model(m, omega) - j2 - solvent_term(m, omega)))

    assert residual(30.0) / residual(60.0) >= 8.0


def test_solvent_term_frozen_protein_matches_exact_at_high_frequency():
    m = EnvironmentModel(Model4(3.0, 10.0))
    omega = np.geomspace(0.1, 100.0, 20)
    assert_allclose(solvent_term(m, omega, exact=False), solvent_term(m, omega, exact=True), rtol=1e-2)
    with pytest.raises(TypeError):
        solvent_term(EnvironmentModel(Model2(3.0)), omega)


def test_model_five_reduces_to_model_three():
    omega = np.geomspace(1e-3, 10.0, 40)
    j5 = j_model(EnvironmentModel(Model5(10.0, 10.0 * (1 + 1e-6), GLASS, BOUND_WATER, WATER)), omega)
    j3 = j_model(EnvironmentModel(Model3(10.0, GLASS, WATER)), omega)
    assert_allclose(j5, j3, rtol=1e-4)


def test_bound_water_term_is_linear_in_shell_fraction():
    fractions = np.geomspace(1e-4, 1e-2, 20)
    values = np.array([bound_water_term(EnvironmentModel(Model5(10.0, 10.0 * (1 + f), GLASS, BOUND_WATER, WATER)),
                                        0.05) for f in fractions])
    assert np.all(np.sign(values) == np.sign(values[0]))
    fit = linregress(np.log(fractions), np.log(np.abs(values)))
    assert fit.rvalue ** 2 > 0.999
    assert abs(fit.slope - 1.0) < 0.05


def test_three_component_parts(default_env, default_terms):
    omega = np.geomspace(1e-6, 1e3, 2000)
    parts = j_three_component(default_env, omega)
    assert np.all(parts[TOTAL] >= 0)
    assert_allclose(parts[TOTAL], parts[PROTEIN_LABEL] + parts[BOUND] + parts[SOLVENT], rtol=1e-12)
    # protein and solvent parts are exact single Lorentzians
    assert_allclose(parts[PROTEIN_LABEL], default_terms.term(PROTEIN_LABEL).evaluate(omega), rtol=1e-10)
    assert_allclose(parts[SOLVENT], default_terms.term(SOLVENT).evaluate(omega), rtol=1e-10)


def test_three_component_peaks_are_ordered(default_env):
    omega = np.geomspace(1e-6, 1e3, 2000)
    parts = j_three_component(default_env, omega)
    peaks = {label: omega[np.argmax(parts[label])] for label in (PROTEIN_LABEL, BOUND, SOLVENT)}
    assert peaks[PROTEIN_LABEL] < peaks[BOUND] < peaks[SOLVENT]
    assert 1.0 / BOUND_WATER.tau_D < peaks[BOUND]


def test_three_component_frozen_solvent_term_matches_model_four(default_env):
    omega = np.geomspace(1e-3, 1e2, 30)
    assert_allclose(solvent_term(default_env.as_model4(), omega, exact=False),
                    j_three_component(default_env, omega)[SOLVENT], rtol=1e-12)


def test_three_component_without_shell(default_env):
    env = ThreeComponentEnvironment(c=10.0)
    omega = np.geomspace(1e-3, 1e2, 10)
    assert np.all(j_three_component(env, omega)[BOUND] == 0)


def test_geometry_validation():
    with pytest.raises(InvalidParameterError):
        Model4(10.0, 3.0)
    with pytest.raises(InvalidParameterError):
        Model5(10.0, 10.0)
    with pytest.raises(InvalidParameterError):
        Model3(10.0, PROTEIN, WATER)
    with pytest.raises(InvalidParameterError):
        Model1(-1.0, VACUUM, WATER)
    with pytest.raises(InvalidParameterError):
        ThreeComponentEnvironment(a=12.0)
