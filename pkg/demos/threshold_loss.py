"""
Loss switches on at the transverse band edge
============================================

Below the minimum of the transverse band the b channel cannot carry a
photon away, so reflection and transmission add up to one. Above it the
loss grows continuously from zero.
"""

import numpy as np

from wgqed import scattering as sc
from wgqed.waveguide_model import channel_pair_from_delta

pair = channel_pair_from_delta(1.0, 0.8, 1.0, 0.01, gamma_b=0.05)
edge = pair.delta_max_f

below = sc.scatter_quadratic_grid(pair, np.linspace(pair.delta_min, edge, 2001))
print("largest |loss| below the edge:", np.abs(below.P_loss).max())

print("\n  delta - edge      loss")
for eps in (1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1e-1):
    pt = sc.scatter_quadratic(pair, edge + eps)
    print(f"{eps:12.0e}  {pt.P_loss:.3e}")

# the limit points carry a flag instead of an indeterminate value
print("\nat the a-band minimum:", sc.scatter_quadratic(pair, pair.delta_min))
print("at the b-band minimum:", sc.scatter_quadratic(pair, edge))
