"""Bound and quasibound states of the atom dressed by the b channel.

A pole of the b-channel T-matrix at energy ``E = omega0 + x`` satisfies

    x = -i gamma_b v_b1 / sqrt(v_b1**2 + 4 v_b2 x),

which after squaring becomes the real cubic ``4 v_b2 x**3 + v_b1**2 x**2 +
gamma_b**2 v_b1**2 = 0``. Its single real root lies below the b band and
is the bound state; the complex pair are quasibound states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .self_energy import retarded_sqrt, sigma
from .waveguide_model import ChannelPair, QuadraticDispersion

__all__ = [
    "BoundStateSet",
    "NoBoundStateError",
    "squared_cubic",
    "cardano_parameters",
    "bound_state_closed_form",
    "bound_state_numeric",
    "bound_state_residual",
    "linear_pole",
    "feshbach_detuning",
    "b_mode_t_matrix",
    "b_mode_inverse_t_matrix",
]


@dataclass(frozen=True)
class BoundStateSet:
    """Pole structure of the b-channel T-matrix.

    When ``is_limit`` is set the coupling vanished: there is no isolated
    bound state and ``E_bound``/``delta_f`` carry the limiting value at the
    band minimum.
    """

    E_bound: float
    delta_f: float
    quasibound: tuple[complex, complex]
    residual: float
    delta_max_f: float
    is_limit: bool = False


class NoBoundStateError(ValueError):
    def __init__(self, message: str, limit: Optional[float] = None):
        super().__init__(message)
        self.limit = limit


def _check(v_b1, v_b2, gamma_b):
    if not v_b1 > 0:
        raise ValueError("v_b1 must be positive")
    if not v_b2 > 0:
        raise ValueError("v_b2 must be positive (use linear_pole for a linear waveguide)")
    if gamma_b < 0:
        raise ValueError("gamma_b must be non-negative")


def squared_cubic(v_b1: float, v_b2: float, gamma_b: float) -> np.ndarray:
    """Coefficients, highest power first, of the squared pole equation in ``x = E - omega0``."""
    return np.array([4 * v_b2, v_b1**2, 0.0, gamma_b**2 * v_b1**2])


def bound_state_residual(v_b1: float, v_b2: float, gamma_b: float, x: float) -> float:
    """``|x + i gamma_b v_b1 / sqrt(v_b1**2 + 4 v_b2 x)|`` with the retarded root."""
    root = retarded_sqrt(v_b1**2 + 4 * v_b2 * x)
    if root == 0:
        return math.inf
    return abs(x + 1j * gamma_b * v_b1 / root)


def cardano_parameters(v_b1: float, v_b2: float, gamma_b: float) -> tuple[float, float]:
    """``(l_b, u_b)`` with ``u_b`` the signed real cube root of ``l_b``.

    ``l_b = -v_b1**6 - 216 v_b1**2 v_b2**2 gamma_b**2
    + 12 sqrt(3) sqrt(v_b1**4 v_b2**2 gamma_b**2 (v_b1**4 + 108 v_b2**2 gamma_b**2))``
    is evaluated as ``-v_b1**6 eps / (1 + sqrt(1 + eps))**2`` with
    ``eps = v_b1**4 / (108 v_b2**2 gamma_b**2)``, which is the same number
    without the cancellation between the last two terms.
    """
    eps = v_b1**4 / (108 * v_b2**2 * gamma_b**2)
    l_b = -(v_b1**6) * eps / (1 + math.sqrt(1 + eps)) ** 2
    u_b = float(np.cbrt(l_b))
    return l_b, u_b


def _literal_l_b(v_b1, v_b2, gamma_b):
    inner = v_b1**4 * v_b2**2 * gamma_b**2 * (v_b1**4 + 108 * v_b2**2 * gamma_b**2)
    return -(v_b1**6) - 216 * v_b1**2 * v_b2**2 * gamma_b**2 + 12 * math.sqrt(3) * math.sqrt(inner)


def bound_state_closed_form(v_b1: float, v_b2: float, gamma_b: float, omega0: float) -> BoundStateSet:
    _check(v_b1, v_b2, gamma_b)
    delta_max = -(v_b1**2) / (4 * v_b2)
    if gamma_b == 0:
        raise NoBoundStateError(
            f"no isolated bound state; limit is delta_max_f={delta_max}", limit=delta_max
        )
    _, u = cardano_parameters(v_b1, v_b2, gamma_b)
    w2, w4 = v_b1**2, v_b1**4
    delta_f = (u * u - u * w2 + w4) / (12 * u * v_b2)
    s3 = 1j * math.sqrt(3)
    denom = 24 * v_b2
    plus = ((-1 + s3) * u - 2 * w2 + (-1 - s3) * w4 / u + 24 * v_b2 * omega0) / denom
    minus = ((-1 - s3) * u - 2 * w2 + (-1 + s3) * w4 / u + 24 * v_b2 * omega0) / denom
    pair = tuple(sorted((complex(plus), complex(minus)), key=lambda z: -z.imag))
    return BoundStateSet(
        E_bound=float(omega0 + delta_f),
        delta_f=float(delta_f),
        quasibound=pair,
        residual=bound_state_residual(v_b1, v_b2, gamma_b, delta_f),
        delta_max_f=float(delta_max),
    )


def bound_state_numeric(
    v_b1: float, v_b2: float, gamma_b: float, omega0: float, tol: float = 1e-8
) -> BoundStateSet:
    """Bound state from the companion-matrix roots of the squared pole equation.

    Squaring admits spurious roots, so every real candidate is checked
    against the unsquared equation with the evanescent self-energy branch.
    ``tol`` bounds the accepted residual, scaled up by the slope of the
    unsquared equation where the root crowds the band edge.
    """
    _check(v_b1, v_b2, gamma_b)
    delta_max = -(v_b1**2) / (4 * v_b2)
    if gamma_b == 0:
        return BoundStateSet(
            E_bound=omega0 + delta_max,
            delta_f=delta_max,
            quasibound=(complex(omega0), complex(omega0)),
            residual=0.0,
            delta_max_f=delta_max,
            is_limit=True,
        )
    coeffs = squared_cubic(v_b1, v_b2, gamma_b)
    roots = np.roots(coeffs)
    real_mask = np.abs(roots.imag) <= 1e-9 * max(1.0, np.max(np.abs(roots)))
    candidates = []
    for x in roots[real_mask].real:
        x = _polish(coeffs, x)
        if x >= delta_max:
            continue
        slope = 2 * gamma_b * v_b1 * v_b2 / abs(v_b1**2 + 4 * v_b2 * x) ** 1.5
        if bound_state_residual(v_b1, v_b2, gamma_b, x) < tol * max(1.0, slope):
            candidates.append(x)
    if len(candidates) != 1:
        raise NoBoundStateError(f"no bound state found (candidates: {candidates})")
    x = candidates[0]
    complex_roots = roots[~real_mask]
    if len(complex_roots) != 2:
        raise NoBoundStateError("squared cubic lacks a complex-conjugate pair")
    z = complex_roots[np.argmax(complex_roots.imag)]
    w = complex_roots[np.argmin(complex_roots.imag)]
    z = 0.5 * (z + np.conj(w))
    pair = (complex(omega0 + z), complex(omega0 + np.conj(z)))
    return BoundStateSet(
        E_bound=float(omega0 + x),
        delta_f=float(x),
        quasibound=pair,
        residual=bound_state_residual(v_b1, v_b2, gamma_b, x),
        delta_max_f=delta_max,
    )


def _polish(coeffs, x, steps=3):
    p = np.poly1d(coeffs)
    dp = p.deriv()
    for _ in range(steps):
        d = dp(x)
        if d == 0:
            break
        step = p(x) / d
        x = x - step
        if abs(step) <= 1e-17 * max(1.0, abs(x)):
            break
    return float(x)


def linear_pole(gamma_b: float, omega0: float) -> complex:
    """The only pole for a linear b channel, ``omega0 - i |gamma_b|``; it is never real."""
    return complex(omega0, -abs(gamma_b))


def feshbach_detuning(pair: ChannelPair) -> float:
    """Detuning at which an a-channel photon is resonant with the b-channel bound state."""
    if not pair.gamma_b > 0:
        raise NoBoundStateError(
            f"no isolated bound state; limit is delta_max_f={pair.delta_max_f}",
            limit=pair.delta_max_f,
        )
    return bound_state_closed_form(pair.b.v1, pair.b.v2, pair.gamma_b, pair.omega0).delta_f


def b_mode_inverse_t_matrix(disp_b: QuadraticDispersion, gamma_b: float, energy: float) -> complex:
    """``(E - omega0 - Sigma_b(E)) / |g_2|**2`` for any real ``E`` off the branch point."""
    g2 = gamma_b * disp_b.v1 / (2 * math.pi)
    if g2 == 0:
        raise ValueError("gamma_b must be positive")
    return (energy - disp_b.omega0 - sigma(disp_b, gamma_b, energy).value) / g2


def b_mode_t_matrix(disp_b: QuadraticDispersion, gamma_b: float, omega: float) -> complex:
    """On-shell T-matrix element for a photon injected in the b channel alone."""
    if not gamma_b > 0:
        raise ValueError("gamma_b must be positive")
    if not omega > disp_b.omega_min:
        raise ValueError(f"no propagating b input at omega={omega} <= omega_min={disp_b.omega_min}")
    return 1 / b_mode_inverse_t_matrix(disp_b, gamma_b, omega)
