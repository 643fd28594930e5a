"""Markovian self-energy of the atomic excitation due to one quadratic channel.

With a wave-vector independent coupling ``g`` and the decay rate
``gamma = 2 pi |g|**2 / v1`` the self-energy is

.. math:: \\Sigma(E) = -\\frac{i \\gamma v_1}{\\sqrt{v_1^2 + 4 v_2 (E - \\omega_0)}}

with the square root taken on the ``+i0`` side of the branch cut. It is
purely imaginary above the band minimum and real (negative) below it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .waveguide_model import QuadraticDispersion

__all__ = [
    "Branch",
    "SelfEnergyValue",
    "BranchPointError",
    "OracleConvergenceError",
    "retarded_sqrt",
    "sigma",
    "sigma_array",
    "sigma_integral_oracle",
    "decay_rate",
    "g_of_rate",
]


class Branch(enum.Enum):
    PROPAGATING = "propagating"
    EVANESCENT = "evanescent"
    AT_BRANCH_POINT = "at_branch_point"


@dataclass(frozen=True)
class SelfEnergyValue:
    value: complex
    branch: Branch


class BranchPointError(ValueError):
    """Raised when the self-energy is requested exactly at the band minimum."""


class OracleConvergenceError(RuntimeError):
    pass


def retarded_sqrt(arg):
    """``sqrt(arg + i0)`` for real ``arg``: ``i*sqrt(|arg|)`` on the negative axis."""
    arg = np.asarray(arg, dtype=float)
    out = np.where(arg >= 0, np.sqrt(np.abs(arg)) + 0j, 1j * np.sqrt(np.abs(arg)))
    return out[()] if out.ndim == 0 else out


def sigma_array(disp: QuadraticDispersion, gamma: float, energy):
    """Vectorized closed-form self-energy; returns ``inf`` entries at the branch point."""
    arg = disp.v1**2 + 4 * disp.v2 * (np.asarray(energy, dtype=float) - disp.omega0)
    root = retarded_sqrt(arg)
    with np.errstate(divide="ignore", invalid="ignore"):
        return -1j * gamma * disp.v1 / root


def sigma(disp: QuadraticDispersion, gamma: float, energy: float) -> SelfEnergyValue:
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    arg = disp.v1**2 + 4 * disp.v2 * (energy - disp.omega0)
    if arg == 0:
        raise BranchPointError("branch point: self-energy diverges at omega_min")
    if arg > 0:
        return SelfEnergyValue(complex(0.0, -gamma * disp.v1 / math.sqrt(arg)), Branch.PROPAGATING)
    return SelfEnergyValue(complex(-gamma * disp.v1 / math.sqrt(-arg), 0.0), Branch.EVANESCENT)


def decay_rate(g, v1: float) -> float:
    """Decay rate ``2 pi |g|**2 / v1`` induced by a channel with group velocity ``v1``."""
    if not v1 > 0:
        raise ValueError("v1 must be positive")
    return 2 * math.pi * abs(g) ** 2 / v1


def g_of_rate(gamma: float, v1: float) -> float:
    if not v1 > 0:
        raise ValueError("v1 must be positive")
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    return math.sqrt(gamma * v1 / (2 * math.pi))


def _quad_complex(func, a, b, limit):
    opts = dict(limit=limit, epsabs=1e-14, epsrel=1e-11)
    re, _ = integrate.quad(lambda x: func(x).real, a, b, **opts)
    im, _ = integrate.quad(lambda x: func(x).imag, a, b, **opts)
    return complex(re, im)


def _regulated_integral(disp, g2, delta, eta, k_cutoff, limit):
    """Integrate ``g2 / (delta + i eta - v1 k - v2 k**2)`` over the real line."""
    v1, v2 = disp.v1, disp.v2
    z = delta + 1j * eta

    def f(k):
        return g2 / (z - v1 * k - v2 * k * k)

    center = -v1 / (2 * v2)
    lo, hi = center - k_cutoff, center + k_cutoff

    # resolve the near-pole Lorentzians with nested breakpoints
    marks = {lo, hi, center}
    arg = v1**2 + 4 * v2 * delta
    if arg > 0:
        for pole in ((-v1 + math.sqrt(arg)) / (2 * v2), (-v1 - math.sqrt(arg)) / (2 * v2)):
            width = eta / math.sqrt(arg)
            for m in (0.0, 1.0, 10.0, 100.0, 1000.0):
                for s in (-1, 1):
                    p = pole + s * m * width
                    if lo < p < hi:
                        marks.add(p)
    else:
        width = math.sqrt(abs(arg)) / (2 * v2) + eta
        for m in (1.0, 10.0):
            marks.update({center - m * width, center + m * width})
    edges = sorted(x for x in marks if lo <= x <= hi)
    total = sum(_quad_complex(f, a, b, limit) for a, b in zip(edges[:-1], edges[1:]))

    # tails beyond the cutoff, mapped to (0, 1] by k = center +/- k_cutoff / u
    def tail(u):
        s = k_cutoff / u
        return (f(center + s) + f(center - s)) * k_cutoff / (u * u)

    total += _quad_complex(tail, 0.0, 1.0, limit)
    return total


def sigma_integral_oracle(
    disp: QuadraticDispersion,
    gamma: float,
    energy: float,
    etas=None,
    k_cutoff: float | None = None,
    limit: int = 400,
    tol: float = 1e-3,
) -> complex:
    """Self-energy by direct quadrature of the defining k-integral.

    The regulated integral ``int dk |g|**2 / (E + i eta - omega(k))`` over the
    full parabola ``omega(k) = omega0 + v1 k + v2 k**2`` is evaluated for a
    decreasing ``eta`` sequence and extrapolated linearly to ``eta -> 0``.

    Parameters
    ----------
    etas : sequence of float, optional
        Regulators, largest first. Default ``(1e-2, 1e-3, 1e-4) * omega0``.
    k_cutoff : float, optional
        Half-width of the directly integrated window around the band
        vertex; beyond it the tails are integrated after the substitution
        ``k = k_cutoff / u``. Default ``50 * (sqrt(|E - omega0| / v2) + v1 / v2)``.
    limit : int
        Maximum number of adaptive subintervals per piece.
    tol : float
        Relative tolerance used for the convergence test of the extrapolation.

    Raises
    ------
    OracleConvergenceError
        If the last two extrapolated estimates differ by more than ``10 * tol``.
    """
    if gamma == 0:
        return 0j
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    if etas is None:
        etas = tuple(e * disp.omega0 for e in (1e-2, 1e-3, 1e-4))
    etas = list(etas)
    if len(etas) < 2 or any(e <= 0 for e in etas):
        raise ValueError("need at least two positive regulators")
    delta = energy - disp.omega0
    if k_cutoff is None:
        k_cutoff = 50 * (math.sqrt(abs(delta) / disp.v2) + abs(disp.v1) / disp.v2)
    g2 = gamma * abs(disp.v1) / (2 * math.pi)
    values = [_regulated_integral(disp, g2, delta, eta, k_cutoff, limit) for eta in etas]

    # linear Richardson extrapolation on consecutive pairs
    estimates = []
    for (e1, s1), (e2, s2) in zip(zip(etas, values), zip(etas[1:], values[1:])):
        estimates.append((e1 * s2 - e2 * s1) / (e1 - e2))
    best = estimates[-1]
    if len(estimates) >= 2:
        spread = abs(estimates[-1] - estimates[-2])
        if spread > 10 * tol * max(abs(best), 1e-300):
            raise OracleConvergenceError(
                f"eta extrapolation not converged: successive estimates differ by {spread:.3e}"
            )
    return complex(best)
