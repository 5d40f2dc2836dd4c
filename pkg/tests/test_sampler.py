import io
import math

import numpy as np
import pytest

from zeta_idd import levy, sampler
from zeta_idd.errors import ConsistencyError, DomainError


@pytest.fixture(scope="module")
def nu100(zeros100):
    return levy.build_levy_measure(zeros100)


def test_alias_table_reproduces_probabilities():
    p = np.array([0.1, 0.2, 0.3, 0.05, 0.35])
    accept, alias = sampler.alias_table(p)
    m = p.size
    recon = accept / m
    for i in range(m):
        recon[alias[i]] += (1 - accept[i]) / m
    assert np.allclose(recon, p, atol=1e-15)


def test_alias_uniform():
    accept, alias = sampler.alias_table(np.full(4, 0.25))
    assert np.all(accept == 1.0)


def test_rejects_bad_n(nu100):
    with pytest.raises(DomainError):
        sampler.sample(nu100, 0, 1)
    with pytest.raises(DomainError):
        sampler.sample(nu100, sampler.MAX_SAMPLES + 1, 1)
    with pytest.raises(DomainError):
        sampler.sample(levy.LevyMeasure(np.array([]), np.array([]), 0.0), 10, 1)


def test_deterministic(nu100):
    a = sampler.sample(nu100, 200_000, 42).values
    b = sampler.sample(nu100, 200_000, 42).values
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sampler.sample(nu100, 200_000, 43).values)


def test_prefix_stable(nu100):
    # draw k depends only on (seed, k), so a shorter run is a prefix of a longer one
    long = sampler.sample(nu100, 3 * sampler.CHUNK + 17, 9).values
    short = sampler.sample(nu100, sampler.CHUNK + 5, 9).values
    assert np.array_equal(long[: short.size][: sampler.CHUNK], short[: sampler.CHUNK])


def test_values_are_sums_of_atoms():
    m = levy.LevyMeasure(np.array([-20.0, 20.0]), np.array([0.5, 0.5]), 20.0)
    x = sampler.sample(m, 10_000, 3).values
    assert np.all(np.mod(x, 20.0) == 0.0)


def test_single_pair_mean():
    g = 14.134725141734693
    m = levy.LevyMeasure(np.array([-g, g]), np.array([g**-2, g**-2]) * 200, g)
    x = sampler.sample(m, 10_000, 5).values
    assert abs(x.mean()) <= 4 * x.std() / math.sqrt(x.size)


def test_zero_fraction(nu100):
    x = sampler.sample(nu100, 1_000_000, 2024).values
    assert abs(np.mean(x == 0.0) - math.exp(-nu100.total_mass)) <= 0.002


def test_variance_second_moment(nu100, zeros100):
    x = sampler.sample(nu100, 1_000_000, 11).values
    expected = 2 * len(zeros100.ordinates)
    assert abs(x.var() / expected - 1) <= 0.05


def test_ecf_at_zero_and_evenness(nu100, zeros100):
    batch = sampler.sample(nu100, 50_000, 1)
    r = sampler.ecf_compare(batch, zeros100, [-2.0, 0.0, 2.0])
    assert r.ecf[1] == 1.0 and r.theoretical[1] == 1.0
    assert np.all(r.theoretical.imag == 0)
    assert r.ecf[0] == pytest.approx(np.conj(r.ecf[2]), abs=1e-15)
    assert np.all(np.abs(r.ecf.imag) <= r.clt_tolerance)
    assert r.clt_tolerance == 3 / math.sqrt(50_000)


def test_ecf_height_mismatch(nu100, zeros1000):
    batch = sampler.sample(nu100, 100, 1)
    with pytest.raises(ConsistencyError):
        sampler.ecf_compare(batch, zeros1000, [1.0])


def test_ecf_passes_at_1e6(nu100, zeros100):
    r = sampler.ecf_compare(sampler.sample(nu100, 1_000_000, 7), zeros100, np.linspace(-10, 10, 21))
    assert r.passed and r.sup_error <= 3e-3


def test_ecf_error_shrinks_with_n(nu100, zeros100):
    ts = np.linspace(-10, 10, 21)
    small = np.mean([sampler.ecf_compare(sampler.sample(nu100, 10_000, s), zeros100, ts).sup_error
                     for s in range(5)])
    big = np.mean([sampler.ecf_compare(sampler.sample(nu100, 1_000_000, s), zeros100, ts).sup_error
                   for s in range(5)])
    # ratio should be about sqrt(100) = 10
    assert 10 / 3 <= small / big <= 30


def test_empirical_cf_order_independent():
    rng = np.random.default_rng(0)
    x = rng.normal(size=5000) * 30
    ts = [0.1, 1.3]
    assert np.array_equal(sampler.empirical_cf(x, ts), sampler.empirical_cf(x[::-1], ts))


def test_write_csv():
    m = levy.LevyMeasure(np.array([-20.0, 20.0]), np.array([1.0, 1.0]), 20.0)
    batch = sampler.sample(m, 5, 0)
    buf = io.StringIO()
    sampler.write_csv(batch, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x" and len(lines) == 6
    assert [float(v) for v in lines[1:]] == batch.values.tolist()
