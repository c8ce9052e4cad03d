import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from paritykick.model import (CODATA, CatStateSpec, KickSchedule, PhysicalConstants,
                              bose_occupation, build_bath, build_occupations, make_schedule,
                              with_couplings, without_zero_mode)


def bose_mp(omega, temperature, hbar=CODATA.hbar, kb=CODATA.k_boltzmann):
    mpmath.mp.dps = 30
    x = mpmath.mpf(hbar) * omega / (mpmath.mpf(kb) * temperature)
    return float(1 / mpmath.expm1(x))


def test_default_bath_grid(bath):
    assert bath.n_modes == 201
    assert (bath.k_min, bath.k_max) == (-100, 100)
    assert bath.mode_frequencies[0] == 0.0
    assert bath.mode_frequencies[-1] == pytest.approx(2e7, rel=1e-15)
    assert bath.omega_cutoff == pytest.approx(2e7)
    assert np.all(np.diff(bath.mode_frequencies) > 0)
    # gamma_k = sqrt(gamma*delta/2pi) = sqrt(1e10/2pi)
    assert np.allclose(bath.couplings, 39894.22804014327, rtol=1e-14)


def test_smallest_bath():
    b = build_bath(1e7, 1e5, 3, 1e5)
    assert np.allclose(b.mode_frequencies, [1e7 - 1e5, 1e7, 1e7 + 1e5])


@pytest.mark.parametrize("kw", [
    dict(n_modes=201, delta=2e5),
    dict(n_modes=4),
    dict(n_modes=1),
    dict(gamma=0.0),
    dict(omega0=-1.0),
])
def test_build_bath_rejects(kw):
    with pytest.raises(ValueError):
        build_bath(**{"omega0": 1e7, "gamma": 1e5, "n_modes": 201, "delta": 1e5, **kw})


def test_flat_spectrum_identity(bath):
    total = np.sum(bath.couplings ** 2) * 2 * math.pi / bath.delta
    assert total == pytest.approx(bath.gamma * bath.n_modes, rel=1e-12)


def test_bose_occupation_reference_temperatures():
    # rounded reference occupations; bose_mp is an independent 30-digit evaluation
    for t, expected in [(0.01, 130), (0.1, 1302), (1.0, 13144)]:
        ours = bose_occupation(1e7, t)
        assert ours == pytest.approx(bose_mp(1e7, t), rel=1e-12)
        assert ours == pytest.approx(expected, rel=0.01)
    assert bose_occupation(1e7, 0.01) == pytest.approx(130.42, abs=0.01)
    assert bose_occupation(1e7, 1.0) == pytest.approx(13091.5, abs=0.1)


def test_bose_zero_temperature_and_bad_omega():
    assert bose_occupation(1e7, 0.0) == 0.0
    with pytest.raises(ValueError):
        bose_occupation(0.0, 0.01)
    with pytest.raises(ValueError):
        bose_occupation(1e7, -1.0)


@given(st.floats(1e3, 1e9), st.floats(1e3, 1e9), st.floats(1e-4, 10.0))
def test_bose_decreasing_in_omega(w1, w2, t):
    if w1 == w2:
        return
    lo, hi = sorted((w1, w2))
    n_lo, n_hi = bose_occupation(lo, t), bose_occupation(hi, t)
    assert n_lo >= n_hi
    if hi / lo > 1 + 1e-9:
        assert n_lo > n_hi


@given(st.floats(1e-4, 10.0), st.floats(1e-4, 10.0))
def test_bose_increasing_in_temperature(t1, t2):
    lo, hi = sorted((t1, t2))
    if hi / lo > 1 + 1e-9:
        assert bose_occupation(1e7, lo) < bose_occupation(1e7, hi)


def test_occupations(bath):
    zero = build_occupations(bath, 0.0)
    assert np.array_equal(zero.occupations, np.zeros(201))
    occ = build_occupations(bath, 0.01)
    assert occ.occupations[100] == pytest.approx(130.42, abs=0.01)
    # zero-frequency mode clamped to delta
    assert occ.occupations[0] == pytest.approx(bose_mp(1e5, 0.01), rel=1e-12)
    assert occ.occupations[0] == pytest.approx(1.309e4, rel=1e-3)
    assert np.all(occ.occupations >= 0)


def test_constants_override():
    c = PhysicalConstants(hbar=1.0546e-34, k_boltzmann=1.3807e-23)
    assert bose_occupation(1e7, 0.01, c) != bose_occupation(1e7, 0.01)
    with pytest.raises(ValueError):
        PhysicalConstants(hbar=0.0)


@pytest.mark.parametrize("tc, tau, dw", [
    (157e-9, 22.43e-9, 1.4006e8),
    (78.5e-9, 11.21e-9, 2.801e8),
])
def test_make_schedule_reference_cycles(tc, tau, dw):
    s = make_schedule(tc, 1 / 7, 10)
    assert s.kick_duration == pytest.approx(tau, rel=1e-3)
    assert s.frequency_shift == pytest.approx(dw, rel=1e-3)
    assert s.n_cycles == 10


def test_make_schedule_trivial():
    s = make_schedule(1.0, 0.5, 0)
    assert s.kick_duration == 0.5
    assert s.frequency_shift == pytest.approx(2 * math.pi)
    with pytest.raises(ValueError):
        make_schedule(0.0)
    with pytest.raises(ValueError):
        make_schedule(1.0, 1.0)


@given(st.floats(1e-12, 1.0), st.floats(1e-3, 0.999))
def test_schedule_parity_condition(tc, frac):
    s = make_schedule(tc, frac)
    assert abs(s.frequency_shift * s.kick_duration - math.pi) <= 1e-12 * math.pi


def test_schedule_rejects_broken_parity():
    with pytest.raises(ValueError):
        KickSchedule(1.0, 0.5, 6.0)


def test_cat_normalization():
    cat = CatStateSpec(2.0, 0.0)
    assert cat.normalization == pytest.approx((2 + 2 * math.exp(-8)) ** -0.5)
    with pytest.raises(ValueError):
        CatStateSpec(0.0, math.pi)


def test_zero_mode_drop_and_coupling_hook(bath):
    dropped = without_zero_mode(bath)
    assert dropped.n_modes == 200 and dropped.k_min == -99
    assert dropped.mode_frequencies[0] == pytest.approx(1e5)
    assert without_zero_mode(dropped) is dropped
    zero = with_couplings(bath, 0.0)
    assert np.all(zero.couplings == 0) and zero.n_modes == 201
