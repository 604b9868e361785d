import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.dynamics.solvation import hydration_correlation
from src.errors import InvalidParameterError
from src.fitting.couplings import EXACT_COEFFICIENT, QUICK_COEFFICIENT, couplings_from_fit, lorentzian_from_fit
from src.fitting.datasets import load_reference_datasets
from src.fitting.multiexp import ExponentialFit
from src.spectral.density import SpectralDensity

FIT = ExponentialFit(((0.55, 0.34), (0.45, 1.6)), 0.0, True)


def test_tryptophan_in_water_coupling():
    record = next(r for r in load_reference_datasets() if r.source == "Lu04CPL")
    report = couplings_from_fit(record.E_R, record.as_fit())
    assert_allclose(report.alphas[1], 189.35, rtol=1e-4)
    assert len(report) == 2


def test_quick_estimate_ratio():
    report = couplings_from_fit(2193.0, FIT)
    assert_allclose(np.array(report.alphas) / np.array(report.quick_estimates),
                    EXACT_COEFFICIENT / QUICK_COEFFICIENT)
    assert list(report) == list(report.alphas)
    assert report.taus == (0.34, 1.6)


def test_lorentzian_reproduces_the_fitted_decay():
    terms = lorentzian_from_fit(2193.0, FIT)
    assert [t.label for t in terms] == ["c1", "c2"]
    assert_allclose(terms.reorganization_energy, 2193.0)
    J = SpectralDensity.from_lorentzian(terms)
    for t in (0.0, 0.3, 1.0, 5.0):
        assert_allclose(hydration_correlation(J, t), FIT.evaluate(t), rtol=1e-12)


def test_invalid_energy_and_labels():
    with pytest.raises(InvalidParameterError):
        couplings_from_fit(None, FIT)
    with pytest.raises(InvalidParameterError):
        couplings_from_fit(-5.0, FIT)
    with pytest.raises(InvalidParameterError):
        lorentzian_from_fit(100.0, FIT, labels=["only"])
