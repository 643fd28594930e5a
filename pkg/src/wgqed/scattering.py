"""Single-photon reflection, transmission and channel loss in the a channel.

For a photon incident in the a channel at detuning ``delta`` the reflection
amplitude is

    r = -i / sqrt(v_a1**2 + 4 v_a2 delta)
        * gamma_a v_a1 / (delta - Sigma_a(delta + omega0) - Sigma_b(delta + omega0))

and ``t = 1 + r``. Both self-energies diverge at their band minima. Writing
``s = sqrt(v_a1**2 + 4 v_a2 delta)`` and ``sb`` for the retarded root of the
b channel, the same amplitude is evaluated as

    r = -i gamma_a v_a1 sb / (s (delta sb + i gamma_b v_b1) + i gamma_a v_a1 sb),

which stays finite at the a-band minimum (``r = -1``) and at the b-band
minimum (``r = 0``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from .bound_states import NoBoundStateError, feshbach_detuning
from .self_energy import g_of_rate, retarded_sqrt, sigma, sigma_array
from .waveguide_model import ChannelPair, detuning_of_k, k_of_detuning

__all__ = [
    "ScatteringPoint",
    "ScatteringGrid",
    "ResonanceSet",
    "BelowBandError",
    "BRANCH_WINDOW",
    "scatter_quadratic",
    "scatter_quadratic_by_k",
    "scatter_quadratic_grid",
    "scatter_quadratic_by_k_grid",
    "scatter_linear",
    "scatter_linear_grid",
    "reflection_from_self_energies",
    "find_resonances",
    "locate_transmission_zeros",
    "excitation_amplitude",
    "fano_profile",
    "dip_half_width",
]

# half-width of the window around the b-band minimum replaced by its limit
BRANCH_WINDOW = 1e-12

FLAG_CUTOFF = "cutoff"
FLAG_BRANCH = "branch_point"
FLAG_BELOW = "below_band"


class BelowBandError(ValueError):
    pass


@dataclass(frozen=True)
class ScatteringPoint:
    k: float
    delta: float
    r: complex
    t: complex
    R: float
    T: float
    P_loss: float
    limit_flag: Optional[str] = None


@dataclass
class ScatteringGrid:
    """Observables on a grid; ``limit_flag`` is ``""`` at regular points."""

    k: np.ndarray
    delta: np.ndarray
    r: np.ndarray
    t: np.ndarray
    R: np.ndarray
    T: np.ndarray
    P_loss: np.ndarray
    limit_flag: np.ndarray

    def __len__(self):
        return len(self.delta)

    def point(self, i: int) -> ScatteringPoint:
        flag = self.limit_flag[i] or None
        return ScatteringPoint(
            float(self.k[i]),
            float(self.delta[i]),
            complex(self.r[i]),
            complex(self.t[i]),
            float(self.R[i]),
            float(self.T[i]),
            float(self.P_loss[i]),
            flag,
        )


@dataclass(frozen=True)
class ResonanceSet:
    k_res: tuple[float, ...]
    k_C: float
    delta_min: float
    k_F: Optional[tuple[float, float]] = None
    delta_F: Optional[float] = None
    delta_max_f: Optional[float] = None
    # False when the Feshbach detuning lies below the a band
    feshbach_in_band: bool = True

    def zero_transmission_k(self) -> list[float]:
        ks = list(self.k_res) + [self.k_C]
        if self.k_F is not None:
            ks.extend(self.k_F)
        return sorted(ks)


def _reflection(pair: ChannelPair, delta, s):
    """Rationalized reflection amplitude and limit flags on arrays."""
    delta = np.asarray(delta, dtype=float)
    s = np.asarray(s, dtype=float)
    ga = pair.gamma_a * pair.a.v1
    flags = np.full(delta.shape, "", dtype=object)
    if pair.gamma_b == 0:
        r = -1j * ga / (s * delta + 1j * ga)
    else:
        sb = retarded_sqrt(pair.b.v1**2 + 4 * pair.b.v2 * delta)
        with np.errstate(invalid="ignore", divide="ignore"):
            r = -1j * ga * sb / (s * (delta * sb + 1j * pair.gamma_b * pair.b.v1) + 1j * ga * sb)
        window = np.abs(delta - pair.delta_max_f) < BRANCH_WINDOW
        r = np.where(window, 0j, r)
        flags[window] = FLAG_BRANCH
    flags[s == 0] = FLAG_CUTOFF
    return np.asarray(r, dtype=complex), flags


def _grid(pair, k, delta, s):
    r, flags = _reflection(pair, delta, s)
    t = 1 + r
    R = np.abs(r) ** 2
    T = np.abs(t) ** 2
    return ScatteringGrid(np.asarray(k, float), np.asarray(delta, float), r, t, R, T, 1 - R - T, flags)


def scatter_quadratic_grid(pair: ChannelPair, delta) -> ScatteringGrid:
    """Evaluate the quadratic two-channel model on a detuning grid.

    Points below the a-band minimum are kept with NaN observables and the
    ``below_band`` flag. ``k`` is the root of ``detuning_of_k`` nearer zero.
    """
    delta = np.atleast_1d(np.asarray(delta, dtype=float))
    disc = pair.a.v1**2 + 4 * pair.a.v2 * delta
    below = delta < pair.delta_min
    s = np.sqrt(np.maximum(disc, 0.0))
    k = (-pair.a.v1 + s) / (2 * pair.a.v2)
    grid = _grid(pair, k, delta, s)
    if below.any():
        for name in ("k", "R", "T", "P_loss"):
            getattr(grid, name)[below] = np.nan
        grid.r[below] = np.nan
        grid.t[below] = np.nan
        grid.limit_flag[below] = FLAG_BELOW
    return grid


def scatter_quadratic_by_k_grid(pair: ChannelPair, k) -> ScatteringGrid:
    k = np.atleast_1d(np.asarray(k, dtype=float))
    delta = detuning_of_k(pair.a, k)
    # |2 v_a2 k + |v_a1|| is sqrt(v_a1**2 + 4 v_a2 delta) on either branch
    s = np.abs(2 * pair.a.v2 * k + abs(pair.a.v1))
    return _grid(pair, k, delta, s)


def scatter_quadratic(pair: ChannelPair, delta: float) -> ScatteringPoint:
    """Scattering at one detuning; the a-band minimum returns the limit ``r = -1``."""
    if delta < pair.delta_min:
        raise BelowBandError(f"below a-channel band minimum: {delta} < {pair.delta_min}")
    return scatter_quadratic_grid(pair, [delta]).point(0)


def scatter_quadratic_by_k(pair: ChannelPair, k: float) -> ScatteringPoint:
    return scatter_quadratic_by_k_grid(pair, [k]).point(0)


def reflection_from_self_energies(pair: ChannelPair, delta: float) -> complex:
    """Reflection amplitude evaluated literally from the two self-energies.

    Undefined at either band minimum; used as a cross-check of the
    rationalized form.
    """
    energy = delta + pair.omega0
    sa = sigma(pair.a, pair.gamma_a, energy).value
    sb = sigma(pair.b, pair.gamma_b, energy).value if pair.gamma_b > 0 else 0j
    s = math.sqrt(pair.a.v1**2 + 4 * pair.a.v2 * delta)
    return -1j / s * pair.gamma_a * pair.a.v1 / (delta - sa - sb)


def scatter_linear_grid(gamma_a: float, gamma_b: float, delta1) -> ScatteringGrid:
    if not gamma_a > 0:
        raise ValueError("gamma_a must be positive")
    if gamma_b < 0:
        raise ValueError("gamma_b must be non-negative")
    delta1 = np.atleast_1d(np.asarray(delta1, dtype=float))
    r = -1j * gamma_a / (delta1 + 1j * (gamma_a + gamma_b))
    t = 1 + r
    denom = delta1**2 + (gamma_a + gamma_b) ** 2
    R = gamma_a**2 / denom
    T = (delta1**2 + gamma_b**2) / denom
    P = 2 * gamma_a * gamma_b / denom
    flags = np.full(delta1.shape, "", dtype=object)
    return ScatteringGrid(np.full(delta1.shape, np.nan), delta1, r, t, R, T, P, flags)


def scatter_linear(gamma_a: float, gamma_b: float, delta1: float) -> ScatteringPoint:
    """Linear-dispersion waveguide, ``delta1 = v_a1 k``.

    ``R``, ``T`` and the loss ``2 gamma_a gamma_b / (delta1**2 + (gamma_a + gamma_b)**2)``
    use their closed forms, so ``k`` is reported as NaN.
    """
    return scatter_linear_grid(gamma_a, gamma_b, [delta1]).point(0)


def find_resonances(pair: ChannelPair) -> ResonanceSet:
    """Wave vectors of complete reflection.

    ``k_C`` (the a-band minimum) is always present. Without b coupling the
    single-photon resonances ``k = 0`` and ``k = -v_a1/v_a2`` are reported;
    with coupling they move to the Feshbach pair ``k_F``.
    """
    a = pair.a
    k_C = -a.v1 / (2 * a.v2)
    if pair.gamma_b == 0:
        return ResonanceSet(
            k_res=(0.0, -a.v1 / a.v2),
            k_C=k_C,
            delta_min=a.delta_min,
            delta_max_f=pair.delta_max_f,
        )
    delta_f = feshbach_detuning(pair)
    if delta_f < a.delta_min:
        return ResonanceSet((), k_C, a.delta_min, None, delta_f, pair.delta_max_f, False)
    return ResonanceSet((), k_C, a.delta_min, k_of_detuning(a, delta_f), delta_f, pair.delta_max_f)


def locate_transmission_zeros(pair: ChannelPair, k_grid, threshold: float = 1e-10) -> list[float]:
    """Zeros of ``t`` found from a k grid by refining every local minimum of ``T``.

    A refined minimum counts as a zero when ``T`` there is below ``threshold``.
    """
    k_grid = np.asarray(k_grid, dtype=float)
    T = scatter_quadratic_by_k_grid(pair, k_grid).T
    idx = [
        i
        for i in range(len(k_grid))
        if (i == 0 or T[i] <= T[i - 1]) and (i == len(k_grid) - 1 or T[i] <= T[i + 1])
    ]

    def transmission(k):
        return float(scatter_quadratic_by_k_grid(pair, [k]).T[0])

    zeros = []
    for i in idx:
        lo = k_grid[max(i - 1, 0)]
        hi = k_grid[min(i + 1, len(k_grid) - 1)]
        res = optimize.minimize_scalar(
            transmission, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13}
        )
        k_best, T_best = (res.x, res.fun) if res.fun < T[i] else (k_grid[i], T[i])
        k_best, T_best = _polish_zero(pair, k_best, T_best, lo, hi)
        if T_best < threshold and not any(abs(k_best - z) < 1e-9 for z in zeros):
            zeros.append(float(k_best))
    return sorted(zeros)


def _polish_zero(pair, k, T_k, lo, hi, steps=4):
    """Newton steps on the complex amplitude ``t(k)``; kept only while ``T`` decreases.

    Brent's search on ``T`` stalls near ``sqrt(eps)`` relative precision in
    ``k``, which leaves ``T`` around ``1e-10`` at a narrow dip.
    """

    def amp(x):
        return complex(scatter_quadratic_by_k_grid(pair, [x]).t[0])

    for _ in range(steps):
        h = 1e-7 * max(1.0, abs(k))
        slope = (amp(k + h) - amp(k - h)) / (2 * h)
        if slope == 0:
            break
        trial = k - (amp(k) / slope).real
        if not lo <= trial <= hi:
            break
        T_trial = abs(amp(trial)) ** 2
        if T_trial >= T_k:
            break
        k, T_k = trial, T_trial
    return k, T_k


def excitation_amplitude(pair: ChannelPair, delta: float, channel: str = "a") -> complex:
    """Excited-state amplitude of the atom in the scattering state.

    ``channel="a"``: photon incident in the a channel with both channels
    coupled, ``g_1 / (delta - Sigma_a - Sigma_b)``. ``channel="b"``: photon
    incident in the b channel with the a channel decoupled,
    ``g_2 / (delta - Sigma_b)``.
    """
    if channel == "a":
        if delta < pair.delta_min:
            raise BelowBandError(f"below a-channel band minimum: {delta} < {pair.delta_min}")
        g1 = g_of_rate(pair.gamma_a, pair.a.v1)
        s = math.sqrt(max(pair.a.v1**2 + 4 * pair.a.v2 * delta, 0.0))
        ga = pair.gamma_a * pair.a.v1
        if pair.gamma_b == 0:
            return complex(g1 * s / (s * delta + 1j * ga))
        sb = complex(retarded_sqrt(pair.b.v1**2 + 4 * pair.b.v2 * delta))
        return complex(g1 * s * sb / (s * (delta * sb + 1j * pair.gamma_b * pair.b.v1) + 1j * ga * sb))
    if channel == "b":
        if not pair.gamma_b > 0:
            raise ValueError("b channel uncoupled (gamma_b = 0): pole on the real axis")
        if delta <= pair.delta_max_f:
            raise BelowBandError(f"no propagating b input at delta={delta}")
        g2 = g_of_rate(pair.gamma_b, pair.b.v1)
        sb_val = complex(sigma_array(pair.b, pair.gamma_b, delta + pair.omega0))
        return complex(g2 / (delta - sb_val))
    raise ValueError(f"unknown channel {channel!r}")


def fano_profile(delta, delta_f: float, q: float, d: float):
    """Fano function ``(delta - delta_f + q)**2 / ((delta - delta_f)**2 + d**2)``."""
    if d == 0:
        raise ValueError("Fano width d must be non-zero")
    x = np.asarray(delta, dtype=float) - delta_f
    out = (x + q) ** 2 / (x * x + d * d)
    return out[()] if out.ndim == 0 else out


def dip_half_width(pair: ChannelPair) -> float:
    """Half-width of the transmission dip at the Feshbach resonance, to first order.

    Below the b band ``T = x**2 / (x**2 + G**2)`` with ``x = delta - Sigma_b(delta)``
    and ``G = gamma_a v_a1 / sqrt(v_a1**2 + 4 v_a2 delta)``. Linearizing ``x``
    around the Feshbach detuning gives the Lorentzian half-width
    ``G / (1 - Sigma_b')``.
    """
    delta_f = feshbach_detuning(pair)
    if delta_f < pair.delta_min:
        raise NoBoundStateError("Feshbach detuning outside the a band")
    G = pair.gamma_a * pair.a.v1 / math.sqrt(pair.a.v1**2 + 4 * pair.a.v2 * delta_f)
    depth = abs(pair.b.v1**2 + 4 * pair.b.v2 * delta_f)
    slope = -2 * pair.gamma_b * pair.b.v1 * pair.b.v2 / depth**1.5
    return G / (1 - slope)
