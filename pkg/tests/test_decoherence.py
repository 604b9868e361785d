import logging
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.constants import HBAR_CM1_PS, KB_CM1_PER_K
from src.dynamics.decoherence import (EXACT, PRINTED, TwoLevelState, decoherence_gamma, density_matrix,
                                      dephasing_rate, exponential_time, gaussian_time, phase_shift)
from src.errors import InvalidParameterError

KT_300 = KB_CM1_PER_K * 300.0


@pytest.mark.parametrize("t", [0.01, 0.5, 2.0, 10.0])
def test_phase_shift_closed_form(unit_lorentzian, t):
    expected = 0.5 * math.pi * (t - 1.0 + math.exp(-t))
    assert_allclose(phase_shift(unit_lorentzian, t), expected, rtol=1e-12)


@pytest.mark.parametrize("t", [0.5, 2.0, 10.0])
def test_phase_shift_quadrature_matches_closed_form(unit_lorentzian, t):
    assert_allclose(phase_shift(unit_lorentzian, t, method="quadrature"), phase_shift(unit_lorentzian, t),
                    rtol=1e-6)


def test_phase_shift_at_zero_and_negative_time(unit_lorentzian):
    assert phase_shift(unit_lorentzian, 0.0) == 0.0
    with pytest.raises(InvalidParameterError):
        phase_shift(unit_lorentzian, -1.0)
    with pytest.raises(InvalidParameterError):
        phase_shift(unit_lorentzian, 1.0, method="fast")


def test_gamma_long_time_slope(unit_lorentzian):
    slope = (decoherence_gamma(unit_lorentzian, 10.0, 300.0) - decoherence_gamma(unit_lorentzian, 5.0, 300.0)) / 5.0
    assert_allclose(slope, math.pi * KT_300 / HBAR_CM1_PS, rtol=1e-2)


def test_gamma_short_time_is_gaussian(unit_lorentzian):
    t = 1e-3
    tau_g = gaussian_time(unit_lorentzian, 300.0).tau_g
    ratio = decoherence_gamma(unit_lorentzian, t, 300.0) / (t * t / (2.0 * tau_g ** 2))
    assert abs(ratio - 1.0) < 2e-2


@pytest.mark.parametrize("temperature, t", [(1.0, 1.5), (0.01, 27.0)])
def test_gamma_intermediate_log_slope(unit_lorentzian, temperature, t):
    # between 1/w_c and hbar/kT the growth is alpha * ln(t)
    rise = (decoherence_gamma(unit_lorentzian, 1.2 * t, temperature)
            - decoherence_gamma(unit_lorentzian, t / 1.2, temperature))
    assert_allclose(rise / (2.0 * math.log(1.2)), 1.0, rtol=0.15)


def test_gamma_is_non_decreasing_at_high_temperature(unit_lorentzian):
    times = [0.1, 0.5, 1.0, 2.0, 5.0]
    values = [decoherence_gamma(unit_lorentzian, t, 300.0) for t in times]
    assert decoherence_gamma(unit_lorentzian, 0.0, 300.0) == 0.0
    assert np.all(np.diff(values) > 0)


def test_gaussian_time_high_temperature(unit_lorentzian):
    result = gaussian_time(unit_lorentzian, 300.0)
    e_r = math.pi * HBAR_CM1_PS / 2.0
    assert_allclose(result.tau_g_high_t, HBAR_CM1_PS / math.sqrt(2.0 * e_r * KT_300), rtol=1e-12)
    assert result.preferred == result.tau_g_high_t
    assert result.cutoff == pytest.approx(1e3)


def test_gaussian_time_low_temperature_has_no_high_t_value(unit_lorentzian):
    result = gaussian_time(unit_lorentzian, 1.0)
    assert result.tau_g_high_t is None
    assert result.preferred == result.tau_g


def test_exponential_time_conventions():
    assert_allclose(exponential_time(1.0, 300.0), HBAR_CM1_PS / (2.0 * KT_300))
    assert_allclose(exponential_time(1.0, 300.0, EXACT), HBAR_CM1_PS / (math.pi * KT_300))
    assert exponential_time(2.0, 300.0, PRINTED) == pytest.approx(exponential_time(1.0, 300.0) / 2.0)
    with pytest.raises(InvalidParameterError):
        exponential_time(1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        exponential_time(0.0, 300.0)
    with pytest.raises(InvalidParameterError):
        exponential_time(1.0, 300.0, "other")


def test_dephasing_rate(make_lorentzian):
    J = make_lorentzian([(0.01, 1.0)])
    expected = 0.005 / math.tanh(HBAR_CM1_PS / (2.0 * KB_CM1_PER_K * 300.0))
    assert_allclose(dephasing_rate(J, HBAR_CM1_PS, 300.0), expected, rtol=1e-12)
    assert_allclose(dephasing_rate(J, HBAR_CM1_PS, 0.0), 0.005, rtol=1e-12)
    with pytest.raises(InvalidParameterError):
        dephasing_rate(J, 0.0, 300.0)


def test_dephasing_rate_warns_outside_weak_coupling(unit_lorentzian, caplog):
    with caplog.at_level(logging.WARNING, logger="src.dynamics.decoherence"):
        dephasing_rate(unit_lorentzian, HBAR_CM1_PS, 300.0)
    assert any("weak-coupling" in record.getMessage() for record in caplog.records)


def test_density_matrix_keeps_populations(unit_lorentzian):
    state = TwoLevelState.normalized(1.0, 1.0, 100.0)
    start = density_matrix(state, unit_lorentzian, 300.0, 0.0)
    assert_allclose(start.rho12, 0.5)
    for t in (0.1, 1.0, 5.0):
        point = density_matrix(state, unit_lorentzian, 300.0, t)
        assert_allclose(point.rho11 + point.rho22, 1.0, rtol=1e-12)
        assert_allclose(point.rho11, 0.5)
        assert abs(point.rho12) <= 0.5
        gamma = decoherence_gamma(unit_lorentzian, t, 300.0)
        assert_allclose(abs(point.rho12), 0.5 * math.exp(-gamma), rtol=1e-10)


def test_two_level_state_validation():
    with pytest.raises(InvalidParameterError):
        TwoLevelState(1.0, 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        TwoLevelState.normalized(0.0, 0.0, 0.0)
    state = TwoLevelState.normalized(3.0, 4.0j, 10.0)
    assert_allclose(abs(state.amp_ground) ** 2, 0.36)


@pytest.mark.parametrize("t", [0.5, 2.0])
def test_gamma_grows_with_temperature(unit_lorentzian, t):
    values = [decoherence_gamma(unit_lorentzian, t, temperature) for temperature in (0.0, 1.0, 10.0, 77.0, 300.0)]
    assert np.all(np.diff(values) > 0)


def test_gaussian_time_quadrature_near_high_temperature_form(unit_lorentzian):
    # k_B T = 20 hbar / tau
    result = gaussian_time(unit_lorentzian, 20.0 * HBAR_CM1_PS / KB_CM1_PER_K)
    assert result.tau_g_high_t is not None
    assert_allclose(result.tau_g, result.tau_g_high_t, rtol=0.05)


def test_coherence_vanishes_at_long_times(unit_lorentzian):
    state = TwoLevelState.normalized(1.0, 2.0, 100.0)
    point = density_matrix(state, unit_lorentzian, 300.0, 20.0)
    assert abs(point.rho12) < 1e-12
    assert_allclose([point.rho11, point.rho22], [0.2, 0.8])
