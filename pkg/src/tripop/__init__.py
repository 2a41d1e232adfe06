"""Complete population transfer in a degenerate three-level atom.

Analytic dressed-state populations, the odd-integer family of exact
transfer conditions, exact pulse action integrals, a fixed-step RK4 oracle,
and leakage diagnostics for nearly degenerate levels.
"""

from .conditions import (
    CaseClassification,
    OddPair,
    TransferCondition,
    classify_cases,
    condition_for_target,
    condition_from_odd_pair,
    enumerate_conditions,
    p3_max,
    populations_closed_form,
    populations_closed_form_array,
    validate_condition,
)
from .dressed import (
    AmplitudeState,
    CouplingRatios,
    DressedBasis,
    PopulationSample,
    amplitudes_at,
    build_dressed_basis,
    cubic_coefficients,
    populations_general,
    populations_general_array,
    solve_cubic,
)
from .errors import (
    ComplexRootsError,
    IdealKickPointQueryError,
    InvalidConfigError,
    InvalidPairError,
    NoConsistentXError,
    NormDriftExceededError,
    OutOfRangeError,
    RepeatedRootError,
    SingularBasisError,
    TripopError,
    VerificationFailedError,
)
from .leakage import (
    LeakageEstimate,
    TwoLevelParams,
    delta_p2_at_t0,
    delta_p2_early,
    export_scan_csv,
    leakage_scan,
    measured_deficit,
    measured_delta_p2,
    measured_two_level_deficit,
    two_level_amplitudes,
    two_level_p2_bound,
    two_level_populations,
)
from .propagate import (
    IntegratorConfig,
    LevelEnergies,
    PopulationTrace,
    compare_analytic_numeric,
    default_steps_per_period,
    dwell_time,
    export_trace_csv,
    integrate,
    propagate_kick,
)
from .pulses import ActionValue, Pulse, harmonic_for_condition, load_tabulated_pulse
from .verification import ConditionCheck, check_condition, require_all_pass, verify_conditions

__version__ = "0.1.0"

__all__ = [
    "ActionValue",
    "AmplitudeState",
    "CaseClassification",
    "ComplexRootsError",
    "ConditionCheck",
    "CouplingRatios",
    "DressedBasis",
    "IdealKickPointQueryError",
    "IntegratorConfig",
    "InvalidConfigError",
    "InvalidPairError",
    "LeakageEstimate",
    "LevelEnergies",
    "NoConsistentXError",
    "NormDriftExceededError",
    "OddPair",
    "OutOfRangeError",
    "PopulationSample",
    "PopulationTrace",
    "Pulse",
    "RepeatedRootError",
    "SingularBasisError",
    "TransferCondition",
    "TripopError",
    "TwoLevelParams",
    "VerificationFailedError",
    "amplitudes_at",
    "build_dressed_basis",
    "check_condition",
    "classify_cases",
    "compare_analytic_numeric",
    "condition_for_target",
    "condition_from_odd_pair",
    "cubic_coefficients",
    "default_steps_per_period",
    "delta_p2_at_t0",
    "delta_p2_early",
    "dwell_time",
    "enumerate_conditions",
    "export_scan_csv",
    "export_trace_csv",
    "harmonic_for_condition",
    "integrate",
    "leakage_scan",
    "load_tabulated_pulse",
    "measured_deficit",
    "measured_delta_p2",
    "measured_two_level_deficit",
    "p3_max",
    "populations_closed_form",
    "populations_closed_form_array",
    "populations_general",
    "populations_general_array",
    "propagate_kick",
    "require_all_pass",
    "solve_cubic",
    "verify_conditions",
    "two_level_amplitudes",
    "two_level_p2_bound",
    "two_level_populations",
    "validate_condition",
]
