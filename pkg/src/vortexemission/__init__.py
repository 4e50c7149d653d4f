"""Spatially resolved spontaneous emission of a vortex-driven V-type emitter.

The closed-form side (`emission`, `fieldmap`) evaluates spectra directly from
the resolvent of the three-amplitude system; the time-domain side
(`dynamics`) rebuilds the same quantities by integrating the amplitude
equations, and `verify` holds the suites that keep the two in agreement.
"""

__version__ = "0.1.0"

from .emission import (POLE_EPSILON, ResolventParts, bk_infinity, coupling_rabi,
                       mn_from_initial, resolvent_parts, resolvent_poles,
                       resonant_closed_form, spectrum, spectrum_ground_no_qi,
                       spectrum_values, vortex_rabi)
from .dynamics import (IntegratorConfig, Trajectory, channel_amplitudes,
                       drive_matrix, evolve, oracle_spectrum, parseval_check,
                       spectral_amplitude)
from .errors import (CheckFailure, ConfigError, DegenerateProfile,
                     InvalidScenario, NonConvergenceWarning, NotConverged,
                     ParseError, SpectralPole, ValidationError,
                     VortexEmissionError)
from .fieldmap import (AzimuthalProfile, SpectrumMap, azimuthal_profile,
                       count_peaks, evaluate_map, rotation_offset,
                       vortex_ring_radius)
from .params import (AtomParams, FieldConfig, GridSpec, InitialState,
                     SpectralPoint)
from .scenarios import (FAMILIES, Scenario, apply_overrides,
                        builtin_scenarios, figure_panels, get_builtin,
                        parse_scenario, serialize_scenario, with_label)
from .verify import CheckResult, run_suites

__all__ = [
    "__version__",
    "AtomParams", "FieldConfig", "InitialState", "SpectralPoint", "GridSpec",
    "Scenario", "ResolventParts", "SpectrumMap", "AzimuthalProfile",
    "IntegratorConfig", "Trajectory", "CheckResult",
    "POLE_EPSILON",
    "vortex_rabi", "coupling_rabi", "resolvent_parts", "mn_from_initial",
    "bk_infinity", "spectrum", "spectrum_values", "spectrum_ground_no_qi",
    "resonant_closed_form", "resolvent_poles",
    "evolve", "drive_matrix", "spectral_amplitude", "channel_amplitudes",
    "oracle_spectrum", "parseval_check",
    "evaluate_map", "azimuthal_profile", "count_peaks", "rotation_offset",
    "vortex_ring_radius",
    "parse_scenario", "serialize_scenario", "apply_overrides",
    "builtin_scenarios", "get_builtin", "figure_panels", "with_label",
    "FAMILIES",
    "run_suites",
    "VortexEmissionError", "ConfigError", "InvalidScenario", "SpectralPole",
    "NotConverged", "ParseError", "ValidationError", "DegenerateProfile",
    "CheckFailure", "NonConvergenceWarning",
]
