import numpy as np
import pytest

from src.spectral.density import SpectralDensity
from src.spectral.environment import ThreeComponentEnvironment
from src.spectral.lorentzian import LorentzianSum, lorentzian_params


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def default_env():
    return ThreeComponentEnvironment()


@pytest.fixture
def default_terms(default_env):
    return lorentzian_params(default_env)


@pytest.fixture
def unit_lorentzian():
    """alpha = 1, tau = 1 ps."""
    return SpectralDensity.from_lorentzian(LorentzianSum.from_pairs([(1.0, 1.0)]))


@pytest.fixture
def make_lorentzian():
    def build(pairs):
        return SpectralDensity.from_lorentzian(LorentzianSum.from_pairs(pairs))
    return build
