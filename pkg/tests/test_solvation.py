import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.constants import HBAR_CM1_PS
from src.dynamics.decoherence import TwoLevelState, gaussian_time
from src.dynamics.solvation import (DERIVATIVE, TRAJECTORY_COLUMNS, echo_peak_shift, hydration_correlation,
                                    relaxation_integral, stokes_shift_nu, trajectory)
from src.errors import InvalidParameterError
from src.spectral.density import SpectralDensity, reorganization_energy

EPSILON = 20000.0
THREE_TERMS = [(1.0, 0.5), (2.0, 5.0), (0.5, 50.0)]


def test_stokes_shift_conventions(unit_lorentzian):
    e_r = reorganization_energy(unit_lorentzian)
    assert_allclose(e_r, math.pi * HBAR_CM1_PS / 2.0)
    assert_allclose(stokes_shift_nu(unit_lorentzian, EPSILON, 0.0), EPSILON - 2.0 * e_r)
    assert_allclose(stokes_shift_nu(unit_lorentzian, EPSILON, 0.0, convention=DERIVATIVE), EPSILON)
    for convention in ("printed", DERIVATIVE):
        assert_allclose(stokes_shift_nu(unit_lorentzian, EPSILON, 50.0, convention=convention),
                        EPSILON - e_r, rtol=1e-12)
    with pytest.raises(InvalidParameterError):
        stokes_shift_nu(unit_lorentzian, EPSILON, 1.0, convention="other")


def test_relaxation_integral_at_zero_is_reorganization_energy(make_lorentzian):
    J = make_lorentzian(THREE_TERMS)
    assert_allclose(HBAR_CM1_PS * relaxation_integral(J, 0.0), reorganization_energy(J), rtol=1e-12)
    assert_allclose(HBAR_CM1_PS * relaxation_integral(J, 0.0, method="quadrature"), reorganization_energy(J),
                    rtol=1e-6)


def test_hydration_correlation_is_weighted_exponentials(make_lorentzian):
    J = make_lorentzian(THREE_TERMS)
    weights = np.array([a / t for a, t in THREE_TERMS])
    weights /= weights.sum()
    t = 3.0
    expected = sum(w * math.exp(-t / tau) for w, (_, tau) in zip(weights, THREE_TERMS))
    assert hydration_correlation(J, 0.0) == pytest.approx(1.0)
    assert_allclose(hydration_correlation(J, t), expected, rtol=1e-12)


@pytest.mark.parametrize("t", [0.1, 1.0, 10.0, 100.0])
def test_hydration_correlation_quadrature(make_lorentzian, t):
    J = make_lorentzian(THREE_TERMS)
    assert abs(hydration_correlation(J, t, method="quadrature") - hydration_correlation(J, t)) < 1e-6


def test_hydration_correlation_needs_weight():
    with pytest.raises(InvalidParameterError):
        hydration_correlation(SpectralDensity.zero(), 1.0)


def test_echo_peak_shift(unit_lorentzian):
    tau_g = gaussian_time(unit_lorentzian, 300.0).preferred
    assert_allclose(echo_peak_shift(unit_lorentzian, 300.0, 0.0), tau_g / math.sqrt(math.pi))
    assert_allclose(echo_peak_shift(unit_lorentzian, 300.0, 2.0), tau_g / math.sqrt(math.pi) * math.exp(-2.0))


def test_trajectory_frame(unit_lorentzian):
    state = TwoLevelState.normalized(1.0, 1.0, EPSILON)
    frame = trajectory(state, unit_lorentzian, 300.0, [0.0, 0.1, 1.0])
    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert len(frame) == 3
    assert frame["abs_rho12"].iloc[0] == pytest.approx(0.5)
    assert frame["abs_rho12"].is_monotonic_decreasing
    assert_allclose(frame["C"], np.exp(-frame["t_ps"]), rtol=1e-12)
