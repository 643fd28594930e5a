from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgqed import bound_states as bs

# 40-digit root of the unsquared pole equation for the reference b channel at gamma_b = 0.05,
# found independently by solving y**3 + v1**2 y - 4 v2 gamma v1 = 0 for the decay constant y
DELTA_F_REF = -0.20590965716607802788
QUASIBOUND_REF = complex(0.0057326063608167917, 0.048248681278970210)

params = st.tuples(st.floats(0.1, 2.0), st.floats(0.05, 1.0), st.floats(1e-3, 0.3))


def reference_b(p0):
    return p0.b.v1, p0.b.v2


def test_reference_bound_state(p0):
    v1, v2 = reference_b(p0)
    st_ = bs.bound_state_closed_form(v1, v2, 0.05, 1.0)
    assert st_.delta_f == pytest.approx(DELTA_F_REF, abs=1e-14)
    assert st_.E_bound == pytest.approx(1 + DELTA_F_REF, abs=1e-14)
    upper, lower = st_.quasibound
    assert upper - 1 == pytest.approx(QUASIBOUND_REF, abs=1e-14)
    assert lower == upper.conjugate()
    assert st_.delta_max_f == pytest.approx(-7 / 36, abs=1e-15)
    assert st_.residual < 1e-14


def test_reference_against_quoted_rounding(p0):
    # quoted to about four significant figures: -0.205920 and 0.005738 +/- 0.048247i
    v1, v2 = reference_b(p0)
    st_ = bs.bound_state_closed_form(v1, v2, 0.05, 1.0)
    assert st_.delta_f == pytest.approx(-0.205920, abs=1e-4)
    assert st_.quasibound[0] - 1 == pytest.approx(0.005738 + 0.048247j, abs=1e-4)


def test_cubic_oracle_is_independent(p0):
    v1, v2 = reference_b(p0)
    roots = np.roots(bs.squared_cubic(v1, v2, 0.05))
    real = roots[np.abs(roots.imag) < 1e-12].real
    assert real == pytest.approx([DELTA_F_REF], abs=1e-13)


@settings(max_examples=200, deadline=None)
@given(params)
def test_closed_form_matches_companion_roots(p):
    v1, v2, g = p
    closed = bs.bound_state_closed_form(v1, v2, g, 1.0)
    numeric = bs.bound_state_numeric(v1, v2, g, 1.0)
    assert closed.delta_f == pytest.approx(numeric.delta_f, abs=1e-10)
    for z, w in zip(closed.quasibound, numeric.quasibound):
        assert z == pytest.approx(w, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(params)
def test_vieta(p):
    v1, v2, g = p
    st_ = bs.bound_state_closed_form(v1, v2, g, 1.0)
    x = [complex(st_.delta_f)] + [z - 1 for z in st_.quasibound]
    assert sum(x) == pytest.approx(-(v1**2) / (4 * v2), abs=1e-12)
    assert x[0] * x[1] + x[0] * x[2] + x[1] * x[2] == pytest.approx(0, abs=1e-12)
    assert x[0] * x[1] * x[2] == pytest.approx(-(g**2) * v1**2 / (4 * v2), abs=1e-13)


@settings(max_examples=200, deadline=None)
@given(params)
def test_bound_state_below_b_band(p):
    v1, v2, g = p
    st_ = bs.bound_state_closed_form(v1, v2, g, 1.0)
    assert st_.delta_f < st_.delta_max_f
    upper, lower = st_.quasibound
    assert upper.imag > 0 and upper == lower.conjugate()


@settings(max_examples=200, deadline=None)
@given(params)
def test_unsquared_residual_relative_to_conditioning(p):
    # near the band edge the pole equation is steep, so even the correctly rounded
    # root leaves a residual of order eps times that slope
    v1, v2, g = p
    st_ = bs.bound_state_closed_form(v1, v2, g, 1.0)
    slope = 2 * g * v1 * v2 / abs(v1**2 + 4 * v2 * st_.delta_f) ** 1.5
    assert st_.residual < 1e-13 * max(1.0, slope)


def test_residual_on_fixed_sample():
    rng = np.random.default_rng(0)
    for _ in range(100):
        v1, v2, g = rng.uniform(0.1, 2), rng.uniform(0.05, 1), rng.uniform(1e-3, 0.3)
        assert bs.bound_state_closed_form(v1, v2, g, 1.0).residual < 1e-10


def test_stable_cardano_parameter_matches_literal_form():
    for v1, v2, g in [(0.66, 0.56, 0.05), (1.5, 0.2, 0.3), (0.3, 0.9, 0.01)]:
        l_b, u_b = bs.cardano_parameters(v1, v2, g)
        assert l_b == pytest.approx(bs._literal_l_b(v1, v2, g), rel=1e-9)
        assert u_b**3 == pytest.approx(l_b, rel=1e-13)
        assert u_b < 0


def test_stable_cardano_parameter_avoids_cancellation():
    # for small v1 the literal expression loses most digits
    v1, v2, g = 0.1, 1.0, 0.3
    eps = v1**4 / (108 * v2**2 * g**2)
    # leading term of the series -v1**6 eps / (1 + sqrt(1 + eps))**2
    approx = -(v1**6) * eps / 4 * (1 - eps / 2)
    l_b, _ = bs.cardano_parameters(v1, v2, g)
    assert l_b == pytest.approx(approx, rel=1e-7)


def test_weak_coupling_limit(p0):
    v1, v2 = reference_b(p0)
    with pytest.raises(bs.NoBoundStateError) as info:
        bs.bound_state_closed_form(v1, v2, 0.0, 1.0)
    assert info.value.limit == pytest.approx(-7 / 36)
    limit = bs.bound_state_numeric(v1, v2, 0.0, 1.0)
    assert limit.is_limit and limit.delta_f == pytest.approx(-7 / 36)
    gaps = [-7 / 36 - bs.bound_state_closed_form(v1, v2, g, 1.0).delta_f for g in (1e-2, 1e-3, 1e-4)]
    assert all(gap > 0 for gap in gaps)
    # the gap closes quadratically in gamma_b
    assert gaps[0] / gaps[1] == pytest.approx(100, rel=0.05)
    assert gaps[1] / gaps[2] == pytest.approx(100, rel=0.01)


def test_binding_deepens_with_coupling(p0):
    v1, v2 = reference_b(p0)
    curve = [bs.bound_state_closed_form(v1, v2, g, 1.0).delta_f for g in np.linspace(0.001, 0.5, 200)]
    assert np.all(np.diff(curve) < 0)


@pytest.mark.parametrize("bad", [(0.0, 0.5, 0.1), (1.0, 0.0, 0.1), (1.0, 0.5, -0.1)])
def test_invalid_inputs(bad):
    with pytest.raises(ValueError):
        bs.bound_state_closed_form(*bad, 1.0)
    with pytest.raises(ValueError):
        bs.bound_state_numeric(*bad, 1.0)


def test_linear_pole_is_never_real():
    assert bs.linear_pole(0.05, 1.0) == complex(1.0, -0.05)
    assert bs.linear_pole(-0.05, 1.0).imag < 0


def test_feshbach_detuning(p0, p0_b):
    assert bs.feshbach_detuning(p0_b) == pytest.approx(DELTA_F_REF, abs=1e-14)
    with pytest.raises(bs.NoBoundStateError):
        bs.feshbach_detuning(p0)


def test_b_mode_t_matrix_at_resonance(p0):
    b = p0.b
    # at omega = omega0 the bare detuning vanishes and only the self-energy remains
    t = bs.b_mode_t_matrix(b, 0.05, 1.0)
    assert t == pytest.approx(-1j * b.v1 / (2 * math.pi), rel=1e-14)


def test_b_mode_inverse_t_vanishes_at_bound_state(p0):
    b = p0.b
    inv = bs.b_mode_inverse_t_matrix(b, 0.05, 1 + DELTA_F_REF)
    assert abs(inv) < 1e-12


def test_b_mode_t_matrix_rejects_evanescent_input(p0):
    with pytest.raises(ValueError):
        bs.b_mode_t_matrix(p0.b, 0.05, p0.b.omega_min - 0.01)
    with pytest.raises(ValueError):
        bs.b_mode_t_matrix(p0.b, 0.0, 1.0)


def test_optical_theorem_for_b_mode(p0):
    # unitarity of single-channel scattering: Im(1/t) is fixed by the density of states
    b = p0.b
    for omega in (0.85, 1.0, 1.5):
        t = bs.b_mode_t_matrix(b, 0.05, omega)
        s = math.sqrt(b.v1**2 + 4 * b.v2 * (omega - 1))
        assert (1 / t).imag == pytest.approx(2 * math.pi / s, rel=1e-12)

