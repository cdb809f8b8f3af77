"""Beyond-RWA Jaynes-Cummings ladder of a capacitively coupled transmon-resonator pair.

Numerical reconstruction of the dressed-state ladder: transmon spectrum and
charge couplings, excitation-strip eigensystems, ac Stark calibration,
effective couplings between strips under the excitation-non-conserving
interaction terms, resonance locations versus qubit detuning, and
TLS-assisted crossing diagrams.  All energies are frequencies (E/h) in GHz.
"""

__version__ = "0.1.0"

from .config import (
    OutputSpec,
    RunConfig,
    SpectroscopyTarget,
    SweepGrid,
    parse_config,
)
from .coupling import (
    CouplingResult,
    PathTerm,
    TransitionSpec,
    effective_coupling,
    interaction_block,
    path_terms,
    two_strip_splitting_oracle,
)
from .errors import (
    BranchTrackingError,
    ConfigError,
    ConvergenceError,
    ShallowWellWarning,
    SuspiciousScanWarning,
)
from .ladder import (
    LadderModel,
    StripEigensystem,
    critical_photon_number,
    diagonalize_strip,
    dispersive_chi,
)
from .resonance import (
    ResonancePoint,
    SweepResult,
    TransitionFamily,
    energy_mismatch,
    find_resonances,
    find_resonant_photon_number,
    parse_transition_tag,
    sweep_qubit_frequency,
)
from .tables import emit_table, parse_table
from .tls import (
    TlsCrossing,
    TlsCrossingDiagram,
    TlsSpec,
    bare_amplitude,
    tls_crossing_diagram,
    tls_resonance_condition,
)
from .transmon import (
    DeviceParams,
    SpectroscopyFit,
    TransmonSpectrum,
    asymptotic_coupling,
    broken_symmetry_coupling,
    normalized_charge_coupling,
    params_from_spectroscopy,
    solve_transmon,
)

__all__ = [
    "BranchTrackingError",
    "ConfigError",
    "ConvergenceError",
    "CouplingResult",
    "DeviceParams",
    "LadderModel",
    "OutputSpec",
    "PathTerm",
    "ResonancePoint",
    "RunConfig",
    "ShallowWellWarning",
    "SpectroscopyFit",
    "SpectroscopyTarget",
    "StripEigensystem",
    "SuspiciousScanWarning",
    "SweepGrid",
    "SweepResult",
    "TlsCrossing",
    "TlsCrossingDiagram",
    "TlsSpec",
    "TransitionFamily",
    "TransitionSpec",
    "TransmonSpectrum",
    "asymptotic_coupling",
    "bare_amplitude",
    "broken_symmetry_coupling",
    "critical_photon_number",
    "diagonalize_strip",
    "dispersive_chi",
    "effective_coupling",
    "emit_table",
    "energy_mismatch",
    "find_resonances",
    "find_resonant_photon_number",
    "interaction_block",
    "normalized_charge_coupling",
    "params_from_spectroscopy",
    "parse_config",
    "parse_table",
    "parse_transition_tag",
    "path_terms",
    "solve_transmon",
    "sweep_qubit_frequency",
    "tls_crossing_diagram",
    "tls_resonance_condition",
    "two_strip_splitting_oracle",
]
