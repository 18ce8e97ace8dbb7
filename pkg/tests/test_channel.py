import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpc, mpf, exp, pi, sin
from scipy import stats

from ma_ee.channel import (
    ChannelParams,
    ChannelRealization,
    channel_coeff,
    channel_gain,
    sample_realization,
    shift_reference,
)

mp.dps = 40


def test_sampling_is_deterministic():
    cp = ChannelParams()
    a, b = sample_realization(cp, 11), sample_realization(cp, 11)
    assert a == b
    assert a.gains.tobytes() == b.gains.tobytes()
    assert a.aods.tobytes() == b.aods.tobytes()
    assert sample_realization(cp, 12) != a


def test_sampled_shapes_and_ranges():
    cr = sample_realization(ChannelParams(num_paths=8), 3)
    assert cr.num_paths == 8
    assert np.all(np.abs(cr.aods) <= math.pi / 2)


@pytest.fixture(scope="module")
def many_realizations():
    cp = ChannelParams(num_paths=4)
    return cp, [sample_realization(cp, s) for s in range(100_000)]


def test_total_path_power_mean(many_realizations):
    cp, crs = many_realizations
    power = np.array([np.sum(np.abs(cr.gains) ** 2) for cr in crs])
    assert power.mean() == pytest.approx(cp.mean_gain, rel=0.02)


def test_aods_uniform(many_realizations):
    _, crs = many_realizations
    theta = np.array([cr.aods[0] for cr in crs])
    ks = stats.kstest(theta, stats.uniform(loc=-math.pi / 2, scale=math.pi).cdf)
    assert ks.statistic < 0.01


def test_broadside_single_path():
    cr = ChannelRealization(np.array([1 + 0j]), np.array([0.0]))
    cp = ChannelParams(num_paths=1)
    for x in (0.0, 0.013, 0.1):
        assert channel_coeff(cr, cp, x) == 1 + 0j


def test_reference_point_sums_gains():
    cp = ChannelParams()
    cr = sample_realization(cp, 5)
    assert channel_coeff(cr, cp, 0.0) == pytest.approx(complex(np.sum(cr.gains)), abs=1e-20)


def _two_path_oracle():
    k0 = 2 * pi / mpf("0.06")
    x = mpf("0.03")
    return mpc(1) * exp(1j * k0 * x * sin(pi / 6)) + mpc(0, 1) * exp(1j * k0 * x * sin(-pi / 6))


def test_two_path_coefficient():
    cr = ChannelRealization(np.array([1, 1j]), np.array([math.pi / 6, -math.pi / 6]))
    cp = ChannelParams(wavelength=0.06, num_paths=2)
    expected = complex(_two_path_oracle())
    assert abs(channel_coeff(cr, cp, 0.03) - expected) < 1e-12
    assert abs(channel_gain(cr, cp, 0.03) - abs(expected) ** 2) < 1e-12


def test_single_path_gain_is_constant():
    cp = ChannelParams(num_paths=1)
    cr = sample_realization(cp, 9)
    x = np.linspace(0, 0.24, 1000)
    g = channel_gain(cr, cp, x)
    assert np.all(g == abs(cr.gains[0]) ** 2)


def test_destructive_pair():
    cr = ChannelRealization(np.array([1, -1]), np.array([0.0, 0.0]))
    cp = ChannelParams(num_paths=2)
    assert channel_gain(cr, cp, 0.05) == 0.0


def test_gain_matches_coefficient_modulus():
    cp = ChannelParams(num_paths=6)
    cr = sample_realization(cp, 21)
    x = np.linspace(0, 0.12, 50)
    np.testing.assert_allclose(channel_gain(cr, cp, x), np.abs(channel_coeff(cr, cp, x)) ** 2,
                               rtol=1e-9, atol=1e-25)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_gain_bounded_by_triangle_inequality(seed, paths):
    cp = ChannelParams(num_paths=paths)
    cr = sample_realization(cp, seed)
    g = channel_gain(cr, cp, np.linspace(0, 0.24, 1000))
    bound = np.sum(np.abs(cr.gains)) ** 2
    assert np.all(g >= 0)
    assert np.all(g <= bound * (1 + 1e-12))


def test_shift_reference():
    cp = ChannelParams()
    cr = sample_realization(cp, 4)
    shifted = shift_reference(cr, cp, 0.06)
    x = np.linspace(0.06, 0.12, 7)
    np.testing.assert_allclose(channel_coeff(shifted, cp, x), channel_coeff(cr, cp, x - 0.06),
                               rtol=1e-10)


def test_csv_round_trip():
    cr = sample_realization(ChannelParams(), 8)
    assert ChannelRealization.from_csv(cr.to_csv()) == cr


def test_invalid_realization():
    with pytest.raises(ValueError):
        ChannelRealization(np.array([1, 1]), np.array([0.0]))
    with pytest.raises(ValueError):
        ChannelRealization(np.array([1]), np.array([2.0]))
    with pytest.raises(ValueError):
        ChannelParams(num_paths=0)
