import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.constants import HBAR_CM1_PS, KB_CM1_PER_K, MEV_CM1
from src.errors import IncompatibleUnitsError, InvalidParameterError
from src.physics.units import (Quantity, Unit, angular_frequency_to_energy, convert, coth, coth_weight,
                               dipole_prefactor, energy_to_angular_frequency, thermal_coth, thermal_energy)


def test_dipole_prefactor_reference_value():
    # 1 D at 3 A is about 373 cm^-1, i.e. 70.2 rad/ps
    assert_allclose(dipole_prefactor(1.0, 3.0), 70.24, rtol=2e-3)


def test_dipole_prefactor_scaling():
    base = dipole_prefactor(1.0, 3.0)
    assert_allclose(dipole_prefactor(2.0, 3.0), 4.0 * base, rtol=1e-12)
    assert_allclose(dipole_prefactor(1.0, 6.0), base / 8.0, rtol=1e-12)
    assert dipole_prefactor(0.0, 3.0) == 0.0


def test_dipole_prefactor_rejects_bad_radius():
    with pytest.raises(InvalidParameterError):
        dipole_prefactor(1.0, 0.0)


def test_energy_conversions():
    assert_allclose(convert(Quantity(1.0, Unit.MEV), Unit.CM1).value, 8.0655, rtol=1e-4)
    assert_allclose(convert(Quantity(1000.0, "fs"), Unit.PS).value, 1.0)
    assert_allclose(convert(Quantity(MEV_CM1, Unit.CM1), Unit.MEV).value, 1.0, rtol=1e-12)
    assert_allclose(energy_to_angular_frequency(HBAR_CM1_PS), 1.0)
    assert_allclose(angular_frequency_to_energy(np.array([1.0, 2.0])), [HBAR_CM1_PS, 2 * HBAR_CM1_PS])


def test_incompatible_units():
    with pytest.raises(IncompatibleUnitsError):
        convert(Quantity(1.0, Unit.PS), Unit.CM1)


def test_thermal_energy():
    assert_allclose(thermal_energy(300.0).value, 300.0 * KB_CM1_PER_K)
    assert thermal_energy(0.0).value == 0.0
    with pytest.raises(InvalidParameterError):
        thermal_energy(-1.0)


def test_coth_branches_are_continuous():
    for x in (4.9e-4, 5.1e-4, 19.9, 20.1):
        assert_allclose(coth(x), 1.0 / np.tanh(x), rtol=1e-12)


def test_thermal_coth():
    assert thermal_coth(1.0, 0.0) == 1.0
    assert_allclose(thermal_coth(np.array([1.0, 2.0]), 0.0), [1.0, 1.0])
    x = HBAR_CM1_PS * 1.0 / (2.0 * KB_CM1_PER_K * 300.0)
    assert_allclose(thermal_coth(1.0, 300.0), 1.0 / np.tanh(x), rtol=1e-12)


@pytest.mark.parametrize("temperature", [0.0, 0.01, 77.0, 300.0])
def test_coth_weight_scalar_matches_array(temperature):
    omega = np.geomspace(1e-6, 1e4, 60)
    weight = coth_weight(temperature)
    scalars = [weight(w) for w in omega]
    assert all(isinstance(value, float) for value in scalars)
    assert_allclose(scalars, weight(omega), rtol=1e-12)
    assert_allclose(weight(omega), thermal_coth(omega, temperature), rtol=1e-12)
