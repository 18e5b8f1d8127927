"""Entanglement-swapping perfect correlations and their local-model refutation.

The package simulates the four-photon two-singlet source exactly, predicts
the correlations seen after Bell-state analysis, compiles the resulting
certainties into +-1 parity constraints for a deterministic local model, and
decides those constraint systems with two independent solvers that emit
machine-checkable certificates.
"""

from .correlations import (
    EventRecord,
    PerfectCorrelationReport,
    PhaseClass,
    SectorReport,
    bell_polarization_distribution,
    classify_zeta,
    f_value_of,
    joint_bell_probabilities,
    kappa_of,
    perfect_correlation_report,
    sample_events,
    zeta,
)
from .lhv import (
    ConstraintSet,
    FunctionTag,
    HiddenContext,
    ParityConstraint,
    Provenance,
    SignVariable,
    apply_factorization,
    compile_bell_polarization,
    compile_double_bell,
    compile_factored,
    contradiction_instance,
    contradiction_settings,
    substitute_factorized,
)
from .quantum import (
    BELL_ORDER,
    AngleSettings,
    BellBellAmplitudes,
    BellOutcome,
    CorrelationPhase,
    FourPhotonState,
    Polarization,
    apply_all_rotations,
    bell_bell_amplitudes_closed_form,
    bell_bell_amplitudes_numeric,
    compute_phases,
    make_vw_state,
    rotate_photon,
)
from .solver import SolveResult, SolveStatus, enumerate_solve, gf2_solve, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "AngleSettings",
    "BellBellAmplitudes",
    "BellOutcome",
    "BELL_ORDER",
    "ConstraintSet",
    "CorrelationPhase",
    "EventRecord",
    "FourPhotonState",
    "FunctionTag",
    "HiddenContext",
    "ParityConstraint",
    "PerfectCorrelationReport",
    "PhaseClass",
    "Polarization",
    "Provenance",
    "SectorReport",
    "SignVariable",
    "SolveResult",
    "SolveStatus",
    "apply_all_rotations",
    "apply_factorization",
    "bell_bell_amplitudes_closed_form",
    "bell_bell_amplitudes_numeric",
    "bell_polarization_distribution",
    "classify_zeta",
    "compile_bell_polarization",
    "compile_double_bell",
    "compile_factored",
    "compute_phases",
    "contradiction_instance",
    "contradiction_settings",
    "enumerate_solve",
    "f_value_of",
    "gf2_solve",
    "joint_bell_probabilities",
    "kappa_of",
    "make_vw_state",
    "perfect_correlation_report",
    "rotate_photon",
    "sample_events",
    "substitute_factorized",
    "verify_certificate",
    "zeta",
]
