"""Rectangular waveguide geometry, TE-mode dispersion and dipole couplings.

The a channel is the TE01 mode and the b channel the TE11 mode. Both are
expanded to second order around the atomic transition frequency ``omega0``,

.. math:: \\omega_{s}(p) \\simeq \\omega_0 + v_{s1} p + v_{s2} p^2,

where ``p`` is the wave-vector deviation from the on-shell point ``k0``.
Throughout the package ``k`` means this deviation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import constants

__all__ = [
    "WaveguideGeometry",
    "ModeIndex",
    "AtomParams",
    "QuadraticDispersion",
    "ChannelPair",
    "MODE_A",
    "MODE_B",
    "cutoff_wavenumber",
    "cutoff_frequency",
    "exact_dispersion",
    "mode_profile",
    "longitudinal_phase",
    "coupling_strength",
    "quadratic_expand",
    "channel_pair_from_delta",
    "detuning_of_k",
    "k_of_detuning",
    "vertex_k",
    "critical_size",
]


@dataclass(frozen=True)
class WaveguideGeometry:
    """Inner cross-section ``L_x`` by ``L_y`` and the light speed ``c``."""

    L_x: float
    L_y: float
    c: float = constants.c

    def __post_init__(self):
        if not (self.L_x > 0 and self.L_y > 0 and self.c > 0):
            raise ValueError(
                f"geometry requires L_x, L_y, c > 0, got {self.L_x}, {self.L_y}, {self.c}"
            )

    @classmethod
    def square_from_delta(cls, omega0: float, delta: float, c: float = 1.0):
        """Square guide whose TE01 mode satisfies ``delta = sqrt(omega0**2 - (c*pi/L)**2)``."""
        if not 0 < abs(delta) < omega0:
            raise ValueError("need 0 < |delta| < omega0")
        omega_cut = math.sqrt(omega0**2 - delta**2)
        side = c * math.pi / omega_cut
        return cls(side, side, c)


@dataclass(frozen=True)
class ModeIndex:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"mode indices must be non-negative, got ({self.m}, {self.n})")


MODE_A = ModeIndex(0, 1)
MODE_B = ModeIndex(1, 1)


@dataclass(frozen=True)
class AtomParams:
    """Two-level atom: transition frequency, transverse position, dipole components."""

    omega0: float
    x0: float
    y0: float
    d_x: complex = 0.0
    d_y: complex = 0.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")


@dataclass(frozen=True)
class QuadraticDispersion:
    """Second-order expansion ``omega0 + v1*k + v2*k**2`` of one channel.

    ``omega_min`` is the band minimum of the parabola. It is derived when not
    given and checked against ``omega0 - v1**2/(4*v2)`` when given.
    """

    omega0: float
    v1: float
    v2: float
    omega_min: Optional[float] = None

    def __post_init__(self):
        if not self.v2 > 0:
            raise ValueError(f"curvature v2 must be positive, got {self.v2}")
        expected = self.omega0 - self.v1**2 / (4 * self.v2)
        if self.omega_min is None:
            object.__setattr__(self, "omega_min", expected)
        elif not math.isclose(self.omega_min, expected, rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError(
                f"omega_min={self.omega_min} inconsistent with omega0 - v1^2/(4 v2) = {expected}"
            )

    @property
    def delta_min(self) -> float:
        """Detuning of the band minimum, ``-v1**2/(4*v2)``."""
        return -self.v1**2 / (4 * self.v2)

    @property
    def k_vertex(self) -> float:
        return -self.v1 / (2 * self.v2)


@dataclass(frozen=True)
class ChannelPair:
    """The incident a channel and the transverse b channel with their decay rates."""

    a: QuadraticDispersion
    b: QuadraticDispersion
    gamma_a: float
    gamma_b: float = 0.0

    def __post_init__(self):
        if not self.gamma_a > 0:
            raise ValueError(f"gamma_a must be positive, got {self.gamma_a}")
        if not self.gamma_b >= 0:
            raise ValueError(f"gamma_b must be non-negative, got {self.gamma_b}")
        if not self.a.v1 > 0:
            # photons enter from the left in the a channel
            raise ValueError("a-channel group velocity v1 must be positive")
        if not self.b.v1 > 0:
            raise ValueError("b-channel group velocity v1 must be positive")
        if self.a.omega0 != self.b.omega0:
            raise ValueError("both channels must be expanded around the same omega0")

    @property
    def omega0(self) -> float:
        return self.a.omega0

    @property
    def delta_min(self) -> float:
        """Lowest detuning at which the a channel propagates."""
        return self.a.delta_min

    @property
    def delta_max_f(self) -> float:
        """Upper bound of the Feshbach detuning, the b-channel band minimum."""
        return self.b.delta_min

    def with_gamma_b(self, gamma_b: float) -> "ChannelPair":
        return ChannelPair(self.a, self.b, self.gamma_a, gamma_b)


def cutoff_wavenumber(geom: WaveguideGeometry, mode: ModeIndex) -> float:
    return math.hypot(mode.m * math.pi / geom.L_x, mode.n * math.pi / geom.L_y)


def cutoff_frequency(geom: WaveguideGeometry, mode: ModeIndex) -> float:
    return geom.c * cutoff_wavenumber(geom, mode)


def exact_dispersion(geom: WaveguideGeometry, mode: ModeIndex, k):
    """Exact TE-mode frequency ``c*sqrt(k_cut**2 + k**2)``; accepts arrays."""
    kc = cutoff_wavenumber(geom, mode)
    return geom.c * np.hypot(kc, k)


def _check_inside(geom: WaveguideGeometry, x, y):
    if np.any(np.asarray(x) < 0) or np.any(np.asarray(x) > geom.L_x):
        raise ValueError(f"x outside the cross-section [0, {geom.L_x}]")
    if np.any(np.asarray(y) < 0) or np.any(np.asarray(y) > geom.L_y):
        raise ValueError(f"y outside the cross-section [0, {geom.L_y}]")


def mode_profile(geom: WaveguideGeometry, mode: ModeIndex, x, y):
    """Transverse electric-field profile of a TE mode.

    The field amplitude per photon and the ``exp(i k z)`` phase are not
    included; see :func:`coupling_strength` and :func:`longitudinal_phase`.

    Returns
    -------
    (u_x, u_y) : complex
        ``u_x = -i (2 n pi / (k_cut L_y)) cos(m pi x / L_x) sin(n pi y / L_y)``
        and ``u_y = i (2 m pi / (k_cut L_x)) sin(m pi x / L_x) cos(n pi y / L_y)``.
        Both vanish for the TE00 mode.
    """
    _check_inside(geom, x, y)
    kc = cutoff_wavenumber(geom, mode)
    if kc == 0.0:
        zero = np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape, dtype=complex)
        return zero[()], zero.copy()[()]
    ax = mode.m * np.pi / geom.L_x
    ay = mode.n * np.pi / geom.L_y
    u_x = -1j * (2 * mode.n * np.pi / (kc * geom.L_y)) * np.cos(ax * x) * np.sin(ay * y)
    u_y = 1j * (2 * mode.m * np.pi / (kc * geom.L_x)) * np.sin(ax * x) * np.cos(ay * y)
    return u_x, u_y


def longitudinal_phase(k, z):
    return np.exp(1j * k * z)


def coupling_strength(geom: WaveguideGeometry, atom: AtomParams, mode: ModeIndex, k: float) -> complex:
    """Dipole coupling ``g_{m,n,k}`` of the atom to mode ``(m, n)`` at wave vector ``k`` (SI units).

    The quantization volume ``L_x L_y 2 pi / |k|`` diverges at ``k = 0``,
    so that point is rejected.
    """
    if k == 0:
        raise ValueError("coupling undefined at k = 0: quantization volume diverges")
    u_x, u_y = mode_profile(geom, mode, atom.x0, atom.y0)
    omega = exact_dispersion(geom, mode, k)
    volume = geom.L_x * geom.L_y * 2 * math.pi / abs(k)
    eps_k = math.sqrt(constants.hbar * omega / (2 * constants.epsilon_0 * volume))
    return complex(-atom.d_x * eps_k * u_x - atom.d_y * eps_k * u_y)


def quadratic_expand(
    geom: WaveguideGeometry, omega0: float, mode: ModeIndex, direction: int = 1
) -> QuadraticDispersion:
    """Taylor-expand the exact dispersion of ``mode`` around its on-shell point at ``omega0``.

    ``direction`` is the sign of the on-shell wave vector ``k0``. The
    coefficients are the analytic derivatives ``v1 = c**2 k0 / omega0`` and
    ``v2 = c**2 (omega0**2 - c**2 k0**2) / (2 omega0**3)``.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    c = geom.c
    omega_cut = cutoff_frequency(geom, mode)
    if not omega0 > omega_cut:
        raise ValueError(f"channel closed at omega0={omega0} (cutoff {omega_cut})")
    k0 = direction * math.sqrt(omega0**2 - omega_cut**2) / c
    v1 = c**2 * k0 / omega0
    v2 = c**2 * omega_cut**2 / (2 * omega0**3)
    return QuadraticDispersion(omega0, v1, v2)


def channel_pair_from_delta(
    omega0: float,
    delta: float,
    v_a1: float,
    gamma_a: float,
    gamma_b: float = 0.0,
    curvature_linear_in_v1: bool = False,
) -> ChannelPair:
    """Build both channels from ``delta = sqrt(omega0**2 - (c pi / L)**2)`` of a square guide.

    ``v_a1`` is taken as a free number. The curvature is
    ``omega0 v_a1**2 / (2 delta**2) - v_a1**2 / (2 omega0)``, the second-order
    Taylor coefficient of the exact dispersion. ``curvature_linear_in_v1=True``
    replaces the last term by ``v_a1 / (2 omega0)``; the two agree at
    ``v_a1 = 1``.
    """
    if not 0 < abs(delta) < omega0:
        raise ValueError("need 0 < |delta| < omega0")
    if 2 * delta**2 <= omega0**2:
        raise ValueError("b channel closed: need 2 delta**2 > omega0**2")
    correction = v_a1 if curvature_linear_in_v1 else v_a1**2
    v_a2 = omega0 * v_a1**2 / (2 * delta**2) - correction / (2 * omega0)
    v_b1 = abs(v_a1) * math.sqrt(2 * delta**2 - omega0**2) / abs(delta)
    a = QuadraticDispersion(omega0, v_a1, v_a2)
    b = QuadraticDispersion(omega0, v_b1, 2 * v_a2)
    return ChannelPair(a, b, gamma_a, gamma_b)


def detuning_of_k(disp: QuadraticDispersion, k):
    return disp.v1 * k + disp.v2 * k * k


def k_of_detuning(disp: QuadraticDispersion, delta: float) -> tuple[float, float]:
    """Both wave-vector deviations with ``v1 k + v2 k**2 = delta``, ``+`` root first."""
    disc = disp.v1**2 + 4 * disp.v2 * delta
    if delta < disp.delta_min:
        raise ValueError(f"below band minimum: delta={delta} < {disp.delta_min}")
    # rounding can leave a tiny negative discriminant at the band minimum itself
    disc = max(disc, 0.0)
    root = math.sqrt(disc)
    # q has the sign of -v1 so the second root avoids cancellation
    q = -0.5 * (disp.v1 + math.copysign(root, disp.v1))
    if q == 0.0:
        return 0.0, 0.0
    big = q / disp.v2
    small = -delta / q
    k_plus, k_minus = (small, big) if disp.v1 >= 0 else (big, small)
    return k_plus, k_minus


def vertex_k(disp: QuadraticDispersion) -> float:
    """Wave vector of the band minimum, ``-v1/(2 v2)``."""
    return disp.k_vertex


def critical_size(omega0: float, c: float = constants.c) -> float:
    """Largest ``L_x`` for which the TE11 channel can be ignored, ``c (sqrt(2)-1) pi / omega0``."""
    if not omega0 > 0:
        raise ValueError("omega0 must be positive")
    return c * (math.sqrt(2) - 1) * math.pi / omega0
