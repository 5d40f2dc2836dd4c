import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeta_idd import gfun, levy
from zeta_idd.errors import ValidationError
from zeta_idd.zeros_io import ZeroTable

# 2 * sum_{gamma <= 236.52} 1/gamma^2 over the first 100 ordinates (direct fsum)
MASS_100 = 0.039988265195
MASS_1000 = 2 * 0.022385414976433393


def test_single_zero():
    m = levy.build_levy_measure(ZeroTable(np.array([14.134725]), np.array([1])))
    assert m.atoms == [(-14.134725, 14.134725**-2), (14.134725, 14.134725**-2)]
    assert m.truncation_height == 14.134725


def test_total_mass_fixture(zeros100, zeros1000):
    assert levy.build_levy_measure(zeros100).total_mass == pytest.approx(MASS_100, abs=1e-11)
    assert levy.build_levy_measure(zeros1000).total_mass == pytest.approx(MASS_1000, rel=1e-14)


def test_symmetry_and_no_small_atoms(zeros1000):
    m = levy.build_levy_measure(zeros1000)
    assert m.is_symmetric()
    assert np.min(np.abs(m.locations)) > 14
    assert len(m) == 2000


def test_mass_nested_monotone(zeros1000):
    masses = [levy.build_levy_measure(zeros1000.head(k)).total_mass for k in (1, 10, 100, 500, 1000)]
    assert all(a < b for a, b in zip(masses, masses[1:]))
    assert masses[-1] < 2 * 0.024


def test_multiplicity_scales_mass():
    m = levy.build_levy_measure(ZeroTable(np.array([20.0, 30.0]), np.array([2, 1])))
    assert m.masses.tolist() == [1 / 900, 2 / 400, 2 / 400, 1 / 900]


def test_invalid_measures():
    with pytest.raises(ValidationError):
        levy.LevyMeasure(np.array([0.0, 1.0]), np.array([1.0, 1.0]), 1.0)
    with pytest.raises(ValidationError):
        levy.LevyMeasure(np.array([-1.0, 1.0]), np.array([1.0, -1.0]), 1.0)
    with pytest.raises(ValidationError):
        levy.LevyMeasure(np.array([1.0, -1.0]), np.array([1.0, 1.0]), 1.0)


def test_admissibility_empty():
    r = levy.admissibility(levy.LevyMeasure(np.array([]), np.array([]), 0.0))
    assert (r.total_mass, r.min1_lambda2_integral, r.abs_lambda_small_integral) == (0, 0, 0)
    assert r.passed


def test_admissibility_structural(zeros1000):
    m = levy.build_levy_measure(zeros1000)
    r = levy.admissibility(m)
    assert r.passed
    assert r.abs_lambda_small_integral == 0.0
    assert r.min1_lambda2_integral == r.total_mass == m.total_mass


def test_admissibility_with_small_atoms():
    m = levy.LevyMeasure(np.array([-2.0, -0.5, 0.5, 2.0]), np.array([1.0, 4.0, 4.0, 1.0]), 2.0)
    r = levy.admissibility(m)
    assert r.total_mass == 10.0
    assert r.min1_lambda2_integral == 2.0 + 8 * 0.25
    assert r.abs_lambda_small_integral == 4.0


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0, 2.5, 7.0, 15.0, 40.0])
def test_exponent_matches_zero_sum(zeros1000, t):
    m = levy.build_levy_measure(zeros1000)
    e = levy.characteristic_exponent(m, t)
    assert e.imag == 0.0
    assert abs(e.real - gfun.g_zero_sum(t, zeros1000).value) <= 1e-12


def test_compensated_form_agrees(zeros100):
    # int lambda/(1+lambda^2) nu(d lambda) vanishes for a symmetric measure,
    # so the compensated form with b = 0 equals the uncompensated form with b0 = 0
    m = levy.build_levy_measure(zeros100)
    assert levy.compensator_drift(m) == 0.0
    for t in (0.5, 3.0, 11.0):
        a = levy.levy_khintchine_exponent(m, t)
        b = levy.levy_khintchine_exponent(m, t, compensated=True)
        assert abs(a - b) <= 1e-15


def test_compensated_form_asymmetric():
    # for a one-sided measure the forms agree once b = b0 + compensator
    m = levy.LevyMeasure(np.array([0.5, 3.0]), np.array([2.0, 0.25]), 3.0)
    b0 = 0.7
    b = b0 + levy.compensator_drift(m)
    for t in (-2.0, 0.4, 5.0):
        a = levy.levy_khintchine_exponent(m, t, drift=b0)
        c = levy.levy_khintchine_exponent(m, t, drift=b, compensated=True)
        assert abs(a - c) <= 1e-14


def test_json_round_trip(zeros100):
    m = levy.build_levy_measure(zeros100)
    back = levy.LevyMeasure.from_json(json.loads(json.dumps(m.to_json())))
    assert np.array_equal(back.locations, m.locations)
    assert np.array_equal(back.masses, m.masses)
    assert back.truncation_height == m.truncation_height


@given(st.lists(st.floats(14.5, 1e4), min_size=1, max_size=30, unique=True))
@settings(max_examples=50, deadline=None)
def test_exponent_nonpositive_real(ordinates):
    z = ZeroTable(np.sort(np.array(ordinates)), np.ones(len(ordinates), dtype=int))
    m = levy.build_levy_measure(z)
    for t in (0.1, 1.0, 13.0):
        e = levy.characteristic_exponent(m, t)
        assert e.real <= 0.0 and e.imag == 0.0
