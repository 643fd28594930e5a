"""
Linear versus quadratic waveguide
=================================

A two-level atom in a linear waveguide reflects a resonant photon
completely. Opening a second (transverse) channel makes part of the
photon leak away, and the reflection drops.
"""

import numpy as np

from wgqed import scattering as sc
from wgqed.waveguide_model import channel_pair_from_delta

gamma_a = 0.01

# linear dispersion, photon on resonance, increasing transverse coupling
print("gamma_b      R1       T1     loss")
for gamma_b in (0.0, 0.005, 0.01, 0.02, 0.05, 1.0):
    pt = sc.scatter_linear(gamma_a, gamma_b, 0.0)
    print(f"{gamma_b:7.3f}  {pt.R:7.4f}  {pt.T:7.4f}  {pt.P_loss:7.4f}")

# the loss peaks at one half when both channels couple equally
print("\nloss at gamma_b = gamma_a:", sc.scatter_linear(gamma_a, gamma_a, 0.0).P_loss)

# %%
# With quadratic dispersion the wave vector sweeps a parabola. Besides
# the two on-shell resonances there is a third zero of transmission at the
# band minimum k_C, where the group velocity vanishes.
pair = channel_pair_from_delta(1.0, 0.8, 1.0, gamma_a)
res = sc.find_resonances(pair)
print("\nzero-transmission wave vectors:", np.round(res.zero_transmission_k(), 6))

k = np.linspace(-4.5, 0.6, 2000)
grid = sc.scatter_quadratic_by_k_grid(pair, k)
print("smallest T on a 2000-point grid:", grid.T.min())
print("located zeros:", np.round(sc.locate_transmission_zeros(pair, k), 6))

# at zero detuning both models agree
print("\nquadratic r(0) =", sc.scatter_quadratic(pair.with_gamma_b(0.05), 0.0).r)
print("linear    r(0) =", sc.scatter_linear(gamma_a, 0.05, 0.0).r)
