"""
Photonic Feshbach resonance
===========================

The transverse channel has its band minimum above the incident photon
for a range of detunings. Coupled to the atom it supports a bound state
below that minimum, and an incident photon at the bound-state energy is
reflected completely.
"""

import numpy as np

from wgqed import bound_states as bs
from wgqed import scattering as sc
from wgqed.waveguide_model import channel_pair_from_delta, k_of_detuning

pair = channel_pair_from_delta(1.0, 0.8, 1.0, 0.01, gamma_b=0.05)
b = pair.b

closed = bs.bound_state_closed_form(b.v1, b.v2, pair.gamma_b, pair.omega0)
numeric = bs.bound_state_numeric(b.v1, b.v2, pair.gamma_b, pair.omega0)
print("bound state detuning (closed form):", closed.delta_f)
print("bound state detuning (companion)  :", numeric.delta_f)
print("b-band minimum                     :", closed.delta_max_f)
print("quasibound pair:", closed.quasibound)
print("residual of the unsquared equation:", closed.residual)

# %%
# Complete reflection at the bound-state energy, seen from both wave vectors
delta_f = closed.delta_f
print("\n|t| at delta_F:", abs(sc.scatter_quadratic(pair, delta_f).t))
for k in k_of_detuning(pair.a, delta_f):
    print(f"|t| at k = {k:+.6f}:", abs(sc.scatter_quadratic_by_k(pair, k).t))

# %%
# Stronger coupling binds deeper; the weak-coupling limit is the band minimum
print("\ngamma_b   delta_F")
for g in np.geomspace(1e-4, 0.2, 8):
    print(f"{g:8.4f}  {bs.bound_state_closed_form(b.v1, b.v2, g, 1.0).delta_f:+.8f}")

# a linear waveguide has no real pole at all
print("\nlinear-waveguide pole:", bs.linear_pole(pair.gamma_b, pair.omega0))
