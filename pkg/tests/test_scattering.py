from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgqed import scattering as sc
from wgqed.bound_states import feshbach_detuning
from wgqed.self_energy import g_of_rate, sigma
from wgqed.waveguide_model import channel_pair_from_delta, detuning_of_k, k_of_detuning

DELTA_F_REF = -0.20590965716607802788


def pair(gamma_b=0.0, gamma_a=0.01, delta=0.8, v_a1=1.0):
    return channel_pair_from_delta(1.0, delta, v_a1, gamma_a, gamma_b)


pairs = st.builds(
    pair,
    gamma_b=st.one_of(st.just(0.0), st.floats(1e-8, 0.3)),
    gamma_a=st.floats(1e-3, 0.1),
    delta=st.floats(0.72, 0.98),
    v_a1=st.floats(0.3, 2.0),
)


def test_reference_point_at_zero_detuning(p0_b):
    pt = sc.scatter_quadratic(p0_b, 0.0)
    assert pt.r == pytest.approx(-1 / 6, abs=1e-15)
    assert pt.T == pytest.approx(25 / 36, abs=1e-15)
    assert pt.R == pytest.approx(1 / 36, abs=1e-15)
    assert pt.P_loss == pytest.approx(2 * 0.01 * 0.05 / 0.06**2, abs=1e-15)
    assert pt.limit_flag is None


def test_single_photon_resonance(p0):
    pt = sc.scatter_quadratic(p0, 0.0)
    assert pt.r == pytest.approx(-1, abs=1e-15) and abs(pt.t) < 1e-15


def test_feshbach_point(p0_b):
    pt = sc.scatter_quadratic(p0_b, DELTA_F_REF)
    assert abs(pt.t) < 1e-9 and pt.R == pytest.approx(1, abs=1e-9)
    for k in k_of_detuning(p0_b.a, DELTA_F_REF):
        assert abs(sc.scatter_quadratic_by_k(p0_b, k).t) < 1e-9


def test_cutoff_resonance(p0_b):
    pt = sc.scatter_quadratic(p0_b, p0_b.delta_min)
    assert pt.r == -1 and pt.t == 0 and pt.limit_flag == "cutoff"
    eps = 10.0 ** -np.arange(4, 13, 2)
    t = np.abs(sc.scatter_quadratic_grid(p0_b, p0_b.delta_min + eps).t)
    assert np.all(np.diff(t) < 0)
    # |t| ~ sqrt(eps) once sqrt(v_a2 eps) is small against gamma_a
    assert t[-2] / t[-1] == pytest.approx(10, rel=1e-3)


def test_branch_point_window(p0_b):
    pt = sc.scatter_quadratic(p0_b, p0_b.delta_max_f)
    assert pt.r == 0 and pt.T == 1 and pt.limit_flag == "branch_point"
    # just outside the window the amplitude is already tiny
    near = sc.scatter_quadratic(p0_b, p0_b.delta_max_f + 1e-10)
    assert abs(near.r) < 1e-4


def test_below_band(p0_b):
    with pytest.raises(sc.BelowBandError):
        sc.scatter_quadratic(p0_b, p0_b.delta_min - 1e-3)
    grid = sc.scatter_quadratic_grid(p0_b, [p0_b.delta_min - 1e-3, 0.0])
    assert np.isnan(grid.T[0]) and grid.limit_flag[0] == "below_band"
    assert grid.T[1] == pytest.approx(25 / 36)


def test_k_form_reference_points(p0):
    assert sc.scatter_quadratic_by_k(p0, 0.0) == sc.scatter_quadratic(p0, 0.0)
    a = p0.a
    for k in (a.k_vertex, -a.v1 / a.v2):
        assert abs(sc.scatter_quadratic_by_k(p0, k).t) < 1e-12


@settings(max_examples=50, deadline=None)
@given(p=pairs)
def test_t_is_one_plus_r_and_loss_nonnegative(p):
    grid = sc.scatter_quadratic_grid(p, np.linspace(p.delta_min, 10.0, 2001))
    assert np.array_equal(grid.t, 1 + grid.r)
    assert np.all(grid.P_loss >= -1e-12)
    assert np.all((grid.R >= 0) & (grid.R <= 1 + 1e-12) & (grid.T <= 1 + 1e-12))
    assert np.max(np.abs(grid.R + grid.T + grid.P_loss - 1)) < 1e-12


@settings(max_examples=50, deadline=None)
@given(p=pairs)
def test_unitary_below_b_band(p):
    hi = min(p.delta_max_f, 10.0)
    if hi <= p.delta_min:
        return
    grid = sc.scatter_quadratic_grid(p, np.linspace(p.delta_min, hi, 1001))
    assert np.max(np.abs(grid.R + grid.T - 1)) < 1e-12
    assert np.max(np.abs(grid.P_loss)) < 1e-12


def test_loss_vanishes_at_threshold(p0_b):
    eps = 10.0 ** -np.arange(2, 12)
    loss = sc.scatter_quadratic_grid(p0_b, p0_b.delta_max_f + eps).P_loss
    assert np.all(np.diff(loss) < 0) and loss[-1] < 1e-4


def test_k_form_matches_detuning_form(p0_b):
    rng = np.random.default_rng(1)
    a = p0_b.a
    ks = rng.uniform(-2 * a.v1 / a.v2 - 1, 1, 1000)
    by_k = sc.scatter_quadratic_by_k_grid(p0_b, ks)
    by_d = sc.scatter_quadratic_grid(p0_b, detuning_of_k(a, ks))
    s = np.abs(2 * a.v2 * ks + a.v1)
    far = s >= 1e-2
    assert np.max(np.abs(by_k.r - by_d.r)[far]) < 1e-12
    # closer to the vertex the detuning form recovers s from a rounded delta
    assert np.all(np.abs(by_k.r - by_d.r)[~far] < 1e-14 / s[~far] + 1e-12)


@settings(max_examples=50, deadline=None)
@given(p=pairs)
def test_quadratic_matches_linear_at_zero_detuning(p):
    q = sc.scatter_quadratic(p, 0.0)
    lin = sc.scatter_linear(p.gamma_a, p.gamma_b, 0.0)
    assert abs(q.r - lin.r) < 1e-12 and abs(q.T - lin.T) < 1e-12


@settings(max_examples=50, deadline=None)
@given(p=pairs.filter(lambda p: p.gamma_b > 0), frac=st.floats(0.001, 3.0))
def test_rationalized_form_matches_self_energies(p, frac):
    delta = p.delta_min + frac * abs(p.delta_min)
    if abs(delta - p.delta_max_f) < 1e-6:
        return
    want = sc.reflection_from_self_energies(p, delta)
    assert sc.scatter_quadratic(p, delta).r == pytest.approx(want, rel=1e-10, abs=1e-14)


def test_loss_against_algebraic_form(p0_b):
    # below the b band Sigma_b is real: R = G**2 / (x**2 + G**2) with x = delta - Sigma_b
    for delta in np.linspace(-0.8, -0.2, 13):
        G = p0_b.gamma_a * p0_b.a.v1 / math.sqrt(p0_b.a.v1**2 + 4 * p0_b.a.v2 * delta)
        x = delta - sigma(p0_b.b, p0_b.gamma_b, 1 + delta).value.real
        assert sc.scatter_quadratic(p0_b, delta).R == pytest.approx(G**2 / (x**2 + G**2), rel=1e-12)
    # above it the width adds: R = G**2 / (x**2 + (G + w)**2), loss = 2 G w / (...)
    for delta in np.linspace(-0.1, 2.0, 13):
        G = p0_b.gamma_a * p0_b.a.v1 / math.sqrt(p0_b.a.v1**2 + 4 * p0_b.a.v2 * delta)
        w = -sigma(p0_b.b, p0_b.gamma_b, 1 + delta).value.imag
        pt = sc.scatter_quadratic(p0_b, delta)
        denom = delta**2 + (G + w) ** 2
        assert pt.R == pytest.approx(G**2 / denom, rel=1e-12)
        assert pt.P_loss == pytest.approx(2 * G * w / denom, rel=1e-10)


# --- linear waveguide ---------------------------------------------------------------


def test_linear_reference_points():
    pt = sc.scatter_linear(0.01, 0.01, 0.0)
    assert (pt.T, pt.R, pt.P_loss) == pytest.approx((0.25, 0.25, 0.5), abs=1e-15)
    mirror = sc.scatter_linear(0.01, 0.0, 0.0)
    assert mirror.R == 1 and mirror.T == 0
    far = sc.scatter_linear(0.01, 0.01, 1e6)
    assert far.T > 1 - 1e-9 and far.R < 1e-9 and far.P_loss < 1e-9
    assert math.isnan(pt.k)


def test_linear_closed_forms_follow_amplitudes():
    grid = sc.scatter_linear_grid(0.01, 0.03, np.linspace(-0.2, 0.2, 101))
    assert np.allclose(grid.R, np.abs(grid.r) ** 2, rtol=1e-13)
    assert np.allclose(grid.T, np.abs(grid.t) ** 2, rtol=1e-13)
    assert np.allclose(grid.R + grid.T + grid.P_loss, 1, atol=1e-15)
    assert np.array_equal(grid.t, 1 + grid.r)
    want_t = (grid.delta + 0.03j) / (grid.delta + 0.04j)
    assert np.allclose(grid.t, want_t, rtol=1e-14, atol=1e-16)


@given(d1=st.floats(-1, 1), gamma_a=st.floats(1e-3, 0.1))
def test_reflection_decreases_with_b_coupling(d1, gamma_a):
    gammas = np.linspace(0, 1, 50)
    R = sc.scatter_linear_grid(gamma_a, 0.0, [d1]).R
    values = [sc.scatter_linear(gamma_a, g, d1).R for g in gammas]
    assert values[0] == R[0]
    assert np.all(np.diff(values) < 0)


def test_loss_peaks_at_equal_rates():
    gammas = np.linspace(0, 0.1, 1001)
    loss = np.array([sc.scatter_linear(0.01, g, 0.0).P_loss for g in gammas])
    i = int(np.argmax(loss))
    assert gammas[i] == pytest.approx(0.01, abs=1e-12)
    assert loss[i] == pytest.approx(0.5, abs=1e-12)
    assert np.all(np.diff(loss[: i + 1]) > 0) and np.all(np.diff(loss[i:]) < 0)


@pytest.mark.parametrize("gamma_b", [0.005, 0.01, 0.05])
def test_loss_lorentzian_half_width(gamma_b):
    d1 = np.linspace(-1, 1, 400001)
    loss = sc.scatter_linear_grid(0.01, gamma_b, d1).P_loss
    above = d1[loss >= loss.max() / 2]
    hwhm = (above[-1] - above[0]) / 2
    assert hwhm == pytest.approx(0.01 + gamma_b, rel=0.01)


def test_strong_b_coupling_transmits():
    assert sc.scatter_linear(0.01, 1.0, 0.0).T > 0.98


def test_linear_validation():
    with pytest.raises(ValueError):
        sc.scatter_linear(0.0, 0.1, 0.0)
    with pytest.raises(ValueError):
        sc.scatter_linear(0.1, -0.1, 0.0)


# --- resonances ----------------------------------------------------------------------


def test_resonances_uncoupled(p0):
    res = sc.find_resonances(p0)
    assert res.k_res == pytest.approx((0.0, -32 / 9), abs=1e-14)
    assert res.k_C == pytest.approx(-16 / 9, abs=1e-15)
    assert res.k_F is None
    assert detuning_of_k(p0.a, res.k_C) == pytest.approx(res.delta_min, abs=1e-15)
    for k in res.zero_transmission_k():
        assert abs(sc.scatter_quadratic_by_k(p0, k).t) < 1e-9


def test_resonances_coupled(p0_b):
    res = sc.find_resonances(p0_b)
    assert res.k_res == ()
    assert res.delta_F == pytest.approx(DELTA_F_REF, abs=1e-14)
    assert res.k_F == pytest.approx((-0.21945476835992756, -3.3361007871956280), abs=1e-13)
    for k in res.k_F:
        assert detuning_of_k(p0_b.a, k) == pytest.approx(res.delta_F, abs=1e-10)
    for k in res.zero_transmission_k():
        assert abs(sc.scatter_quadratic_by_k(p0_b, k).t) < 1e-9


def test_feshbach_outside_a_band():
    # strong coupling pushes the bound state below the a-band minimum
    p = pair(gamma_b=5.0)
    res = sc.find_resonances(p)
    assert res.delta_F < p.delta_min and not res.feshbach_in_band and res.k_F is None


@pytest.mark.parametrize("gamma_b", [0.0, 0.05, 0.15])
def test_locator_finds_predicted_zeros(gamma_b):
    p = pair(gamma_b)
    found = sc.locate_transmission_zeros(p, np.linspace(-4.5, 0.6, 2000))
    want = sc.find_resonances(p).zero_transmission_k()
    assert found == pytest.approx(want, abs=1e-6)


# --- excitation amplitude and Fano function ------------------------------------------


def test_excitation_on_resonance(p0):
    beta = sc.excitation_amplitude(p0, 0.0)
    g1 = g_of_rate(0.01, 1.0)
    assert beta == pytest.approx(-1j * g1 / 0.01, rel=1e-14)
    assert abs(beta) ** 2 == pytest.approx(1 / (2 * math.pi * 0.01), rel=1e-14)
    stronger = channel_pair_from_delta(1.0, 0.8, 1.0, 0.04)
    assert abs(sc.excitation_amplitude(stronger, 0.0)) ** 2 == pytest.approx(abs(beta) ** 2 / 4, rel=1e-14)


def test_excitation_relates_to_reflection(p0_b):
    # r = -2 pi i g1 beta / sqrt(v_a1**2 + 4 v_a2 delta) for the a-channel input
    g1 = g_of_rate(p0_b.gamma_a, p0_b.a.v1)
    for delta in (-0.5, DELTA_F_REF, 0.0, 0.7):
        s = math.sqrt(p0_b.a.v1**2 + 4 * p0_b.a.v2 * delta)
        r = -2j * math.pi * g1 * sc.excitation_amplitude(p0_b, delta) / s
        assert r == pytest.approx(sc.scatter_quadratic(p0_b, delta).r, rel=1e-12, abs=1e-15)


def test_excitation_b_channel(p0, p0_b):
    with pytest.raises(ValueError, match="uncoupled"):
        sc.excitation_amplitude(p0, 0.5, channel="b")
    g2 = g_of_rate(0.05, p0_b.b.v1)
    assert sc.excitation_amplitude(p0_b, 0.0, channel="b") == pytest.approx(-1j * g2 / 0.05, rel=1e-14)
    with pytest.raises(sc.BelowBandError):
        sc.excitation_amplitude(p0_b, -0.5, channel="b")
    with pytest.raises(ValueError):
        sc.excitation_amplitude(p0_b, 0.0, channel="c")


def test_fano_profile():
    assert sc.fano_profile(0.3, 0.3, 1e-4, 1e-3) == pytest.approx(1e-2)
    assert sc.fano_profile(0.3 - 1e-4, 0.3, 1e-4, 1e-3) == pytest.approx(0, abs=1e-20)
    assert sc.fano_profile(1e6, 0.3, 1e-4, 1e-3) == pytest.approx(1, rel=1e-9)
    with pytest.raises(ValueError):
        sc.fano_profile(0.0, 0.3, 1e-4, 0.0)


def test_dip_half_width_matches_transmission(p0_b):
    w = sc.dip_half_width(p0_b)
    delta_f = feshbach_detuning(p0_b)
    # T reaches one half at one half-width on either side to first order; the dip is
    # slightly skewed by the energy dependence of the a-channel width
    T = sc.scatter_quadratic_grid(p0_b, [delta_f - w, delta_f + w]).T
    assert T == pytest.approx([0.5, 0.5], abs=0.05)
    assert T.mean() == pytest.approx(0.5, abs=0.005)
