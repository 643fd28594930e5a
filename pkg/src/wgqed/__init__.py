"""Single-photon scattering on a two-level atom in a finite cross-section waveguide.

The incident TE01 channel (``a``) and the nearest transverse TE11 channel
(``b``) are treated with quadratic dispersion; a linear-dispersion model is
provided for comparison.
"""
from .bound_states import (
    BoundStateSet,
    NoBoundStateError,
    b_mode_t_matrix,
    bound_state_closed_form,
    bound_state_numeric,
    feshbach_detuning,
    linear_pole,
)
from .scattering import (
    ResonanceSet,
    ScatteringPoint,
    excitation_amplitude,
    fano_profile,
    find_resonances,
    scatter_linear,
    scatter_quadratic,
    scatter_quadratic_by_k,
)
from .self_energy import decay_rate, g_of_rate, sigma, sigma_integral_oracle
from .waveguide_model import (
    MODE_A,
    MODE_B,
    AtomParams,
    ChannelPair,
    ModeIndex,
    QuadraticDispersion,
    WaveguideGeometry,
    channel_pair_from_delta,
    coupling_strength,
    critical_size,
    cutoff_wavenumber,
    detuning_of_k,
    exact_dispersion,
    k_of_detuning,
    mode_profile,
    quadratic_expand,
)

__version__ = "0.1.0"
