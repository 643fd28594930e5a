"""
How small must the waveguide be?
================================

The transverse channel stays closed at the atomic frequency as long as
the guide is narrower than L_c = c (sqrt(2) - 1) pi / omega0.
"""

from wgqed.waveguide_model import (
    MODE_A,
    MODE_B,
    WaveguideGeometry,
    critical_size,
    cutoff_frequency,
)

platforms = {
    "superconducting circuit (10 GHz)": 1e10,
    "optical cavity": 2.21e15,
    "x-ray, 57Fe nuclear transition": 3.48e18,
}
for label, omega0 in platforms.items():
    print(f"{label:34s} L_c = {critical_size(omega0):.4e} m")

# at L_c the two lowest cutoffs of a square guide are exactly omega0 apart
omega0 = 1e10
L = critical_size(omega0)
geom = WaveguideGeometry(L, L)
gap = cutoff_frequency(geom, MODE_B) - cutoff_frequency(geom, MODE_A)
print("\ncutoff gap / omega0 at L_c:", gap / omega0)
