import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm
from scipy.special import gammaln

from paritykick.model import (CatStateSpec, bose_occupation, build_occupations, make_schedule,
                              with_couplings)
from paritykick.observables import (decoherence_series, fringe_visibility, heating_series,
                                    markov_heating, markov_visibility, mean_vibrational_number,
                                    predict_threshold, wigner_cat)
from paritykick.propagator import (AmplitudeRow, cycle_matrix, free_evolution_row,
                                   stroboscopic_rows)

FOCK_DIM = 70


def _coherent(b):
    n = np.arange(FOCK_DIM)
    return np.exp(-abs(b) ** 2 / 2 + n * np.log(complex(b)) - 0.5 * gammaln(n + 1))


def fock_wigner(alpha0, phi, c00, points):
    """Displaced-parity Wigner function of the zero-temperature damped cat."""
    a = np.diag(np.sqrt(np.arange(1, FOCK_DIM)), 1)
    big = alpha0 * c00
    overlap = math.exp(-2 * abs(alpha0) ** 2 * (1 - abs(c00) ** 2))
    p, m = _coherent(big), _coherent(-big)
    norm2 = 1 / (2 + 2 * math.exp(-2 * abs(alpha0) ** 2) * math.cos(phi))
    rho = norm2 * (np.outer(p, p.conj()) + np.outer(m, m.conj())
                   + overlap * (cmath.exp(1j * phi) * np.outer(m, p.conj())
                                + cmath.exp(-1j * phi) * np.outer(p, m.conj())))
    parity = np.diag((-1.0) ** np.arange(FOCK_DIM))
    out = []
    for al in points:
        d = expm(al * a.conj().T - np.conj(al) * a)
        out.append(2 / math.pi * np.real(np.trace(rho @ d @ parity @ d.conj().T)))
    return np.array(out)


def test_mean_vibrational_number_trivial(bath):
    occ = build_occupations(bath, 0.01)
    e0 = np.zeros(202, complex)
    e0[0] = 1
    assert mean_vibrational_number(AmplitudeRow(e0, 0.0), occ) == 0
    row = free_evolution_row(bath, [1e-5])[0]
    assert mean_vibrational_number(row, build_occupations(bath, 0.0)) == 0
    with pytest.raises(ValueError):
        mean_vibrational_number(AmplitudeRow(e0[:10], 0.0), occ)


def test_free_heating_at_relaxation_time(bath):
    row = free_evolution_row(bath, [1 / bath.gamma])[0]
    nu = mean_vibrational_number(row, build_occupations(bath, 0.01))
    assert nu == pytest.approx(82.44, rel=0.05)


def test_nu_global_phase_invariance(bath):
    row = free_evolution_row(bath, [3e-6])[0]
    occ = build_occupations(bath, 0.1)
    rotated = AmplitudeRow(row.entries * cmath.exp(0.77j), row.elapsed)
    assert mean_vibrational_number(rotated, occ) == pytest.approx(mean_vibrational_number(row, occ),
                                                                  rel=1e-13)


def test_fringe_visibility_values():
    assert fringe_visibility(1.0, 0.0) == 0.0
    assert fringe_visibility(0.0, 17.0) == 1.0
    nu = 130 * (1 - math.exp(-1))
    # 1 - 0.367879/165.3514
    assert fringe_visibility(math.exp(-0.5), nu) == pytest.approx(0.9977752, abs=1e-6)
    assert fringe_visibility(1.0 + 1e-12, 0.0) == 0.0
    assert fringe_visibility(cmath.exp(2j) * 0.5, 0.0) == pytest.approx(0.75)


def test_markov_references():
    assert markov_heating(0.0, 1e5, 130.4) == 0.0
    assert markov_heating(1e3, 1e5, 130.4) == pytest.approx(130.4)
    assert markov_heating(1e-5, 1e5, 130.4) == pytest.approx(82.43, abs=0.01)
    assert markov_visibility(0.0, 1e5, 130.4) == 0.0
    assert markov_visibility(1e-5, 1e5, 130.4) == pytest.approx(0.99778, abs=1e-5)
    assert markov_visibility(1e-5, 1e5, 0.0) == pytest.approx(0.63212, abs=1e-5)


@given(st.floats(0, 1e-3), st.floats(0, 2e4))
def test_markov_visibility_in_unit_interval(t, n0):
    v = markov_visibility(t, 1e5, n0)
    assert -1e-15 <= v <= 1


def test_predict_threshold(bath):
    cut = predict_threshold(0.0, bath)
    assert cut.branch == "cutoff"
    assert cut.cycle_time == pytest.approx(2 * math.pi / 2e7)
    assert cut.cycle_time == pytest.approx(314e-9, rel=2e-3)
    warm = predict_threshold(0.01, bath)
    assert warm.branch == "thermal"
    assert warm.cycle_time == pytest.approx(38.2e-9, rel=2e-3)
    hot = predict_threshold(1.0, bath)
    assert hot.cycle_time == pytest.approx(1 / (1e5 * (1 + 2 * bose_occupation(1e7, 1.0))))
    assert hot.cycle_time == pytest.approx(0.38e-9, rel=0.01)


def test_wigner_pure_cat_matches_fock_oracle():
    cat = CatStateSpec(2.0, 0.0)
    grid = wigner_cat((-6, 6), (-6, 6), 241, cat, 1.0, 0.0)
    assert grid.integral() == pytest.approx(1.0, abs=1e-3)
    origin = grid.values[120, 120]
    assert origin == pytest.approx(2 * cat.normalization ** 2 / math.pi * (2 * math.exp(-8) + 2))
    pts = [0.3 - 0.8j, -1 + 0.5j, 2.0 + 0.1j]
    ours = [wigner_cat((p.real, p.real + 1), (p.imag, p.imag + 1), 2, cat, 1.0, 0.0).values[0, 0]
            for p in pts]
    assert np.allclose(ours, fock_wigner(2.0, 0.0, 1.0, pts), atol=1e-10)


@pytest.mark.parametrize("alpha0, phi, c00", [
    (1.5 + 0.7j, 1.0, 1.0),
    (1.5 + 0.7j, 1.0, 0.6 * cmath.exp(0.4j)),
    (2.0, 0.7, 0.5 * cmath.exp(1.1j)),
])
def test_wigner_damped_cat_matches_fock_oracle(alpha0, phi, c00):
    pts = [0.3 - 0.8j, -1 + 0.5j, 0.9 + 0.2j]
    cat = CatStateSpec(alpha0, phi)
    ours = [wigner_cat((p.real, p.real + 1), (p.imag, p.imag + 1), 2, cat, c00, 0.0).values[0, 0]
            for p in pts]
    assert np.allclose(ours, fock_wigner(alpha0, phi, c00, pts), atol=1e-10)


def test_wigner_thermal_is_gaussian_smearing():
    # thermal noise with mean number nu convolves the nu = 0 Wigner function with
    # a Gaussian of variance nu/2 per quadrature
    cat = CatStateSpec(1.5, 0.4)
    c00, nu = 0.8 * cmath.exp(0.3j), 0.35
    xs = np.linspace(-7, 7, 561)
    h = xs[1] - xs[0]
    base = wigner_cat((-7, 7), (-7, 7), 561, cat, c00, 0.0).values
    target = wigner_cat((-7, 7), (-7, 7), 561, cat, c00, nu)
    for iy, ix in [(280, 280), (300, 250), (330, 310)]:
        ky = np.exp(-(xs[iy] - xs) ** 2 / nu) / math.sqrt(math.pi * nu)
        kx = np.exp(-(xs[ix] - xs) ** 2 / nu) / math.sqrt(math.pi * nu)
        smeared = np.sum(base * ky[:, None] * kx[None, :]) * h * h
        assert smeared == pytest.approx(target.values[iy, ix], abs=1e-6)


def test_wigner_fully_decayed_is_thermal_gaussian():
    cat = CatStateSpec(2.0, 0.0)
    nu = 3.0
    g = wigner_cat((-12, 12), (-12, 12), 241, cat, 0.0, nu)
    x = g.re_axis
    thermal = 2 / (math.pi * (1 + 2 * nu)) * np.exp(-2 * (x[None, :] ** 2 + x[:, None] ** 2) / (1 + 2 * nu))
    assert np.allclose(g.values, thermal, atol=1e-12)
    assert g.integral() == pytest.approx(1.0, abs=1e-3)


def test_wigner_interference_weight_consistent_with_eta(bath):
    occ = build_occupations(bath, 0.01)
    row = stroboscopic_rows(cycle_matrix(bath, make_schedule(78.5e-9)), 1)[1]
    nu = mean_vibrational_number(row, occ)
    eta = fringe_visibility(row.c00, nu)
    even, odd = CatStateSpec(2.0, 0.0), CatStateSpec(2.0, math.pi)
    g_even = wigner_cat((-1, 1), (-1, 1), 3, even, row.c00, nu)
    g_odd = wigner_cat((-1, 1), (-1, 1), 3, odd, row.c00, nu)
    # at the origin only the interference term changes sign with phi
    w = 1 + 2 * nu
    diff = g_even.values[1, 1] / even.normalization ** 2 - g_odd.values[1, 1] / odd.normalization ** 2
    assert diff * math.pi * w / 8 == pytest.approx(math.exp(-8 * eta), rel=1e-9)
    assert wigner_cat((-6, 6), (-6, 6), 241, even, row.c00, nu).integral() == pytest.approx(1, abs=1e-3)


def test_heating_series_free_and_zero_temperature(bath):
    occ = build_occupations(bath, 0.01)
    g = bath.gamma
    times = np.linspace(0.1 / g, 3 / g, 30)
    free = heating_series(bath, occ, times=times)
    assert len(free) == 30 and free.labels["mode"] == "free"
    assert np.all(free.nu >= 0) and np.all((free.eta >= 0) & (free.eta <= 1))
    cold = heating_series(bath, build_occupations(bath, 0.0), make_schedule(157e-9, 1 / 7, 63))
    assert np.all(cold.nu == 0)
    assert np.allclose(cold.eta, 1 - cold.c00_abs2, atol=1e-15)
    with pytest.raises(ValueError):
        heating_series(bath, occ)


def test_heating_suppression_default_bath(bath):
    occ = build_occupations(bath, 0.01)
    kicked = heating_series(bath, occ, make_schedule(157e-9, 1 / 7, 63))
    free = heating_series(bath, occ, times=[1 / bath.gamma])
    assert kicked.labels["mode"] == "kicked"
    assert kicked.times[-1] == pytest.approx(63 * 157e-9)
    assert kicked.nu[-1] <= 0.05 * free.nu[-1]


def test_decoherence_decoupled_and_alpha_independence(bath):
    zero = with_couplings(bath, 0.0)
    occ = build_occupations(zero, 0.01)
    s = make_schedule(78.5e-9, 1 / 7, 127)
    series = decoherence_series(zero, occ, CatStateSpec(2.0), s)
    assert np.all(series.eta == 0)
    occ = build_occupations(bath, 0.01)
    a = decoherence_series(bath, occ, CatStateSpec(2.0, 0.3), s)
    b = decoherence_series(bath, occ, CatStateSpec(4.0, 1.3), s)
    assert np.array_equal(a.eta, b.eta)


def test_decoherence_kicked_below_free(bath):
    occ = build_occupations(bath, 0.01)
    cat = CatStateSpec(2.0)
    kicked = decoherence_series(bath, occ, cat, make_schedule(78.5e-9, 1 / 7, 127))
    free = decoherence_series(bath, occ, cat, times=kicked.times)
    assert kicked.eta[-1] < 0.5 * free.eta[-1]
    mid = len(kicked) // 2
    assert np.all(kicked.eta[mid:] < free.eta[mid:])
