"""Multi-tone entangling gate design and verification toolkit."""

from ._core import (  # noqa: F401
    ETA_OMEGA,
    XI0,
    DesignError,
    GateDesign,
    NumericalError,
    SimConfig,
    __version__,
    accumulated_phase,
    cardioid_closed_form_amplitudes,
    carrier_infidelity_oracle,
    carrier_series,
    design_antioid,
    design_cardioid,
    design_carnu,
    design_carnu_minimized,
    design_from_json,
    design_ms,
    evolve,
    gate_fidelity,
    gate_infidelity,
    gate_purity,
    gate_time_ratio,
    hyp2f1_series,
    ideal_target_state,
    make_custom,
    populations,
    radial_form,
    run_scan_json,
    thermal_average,
    trajectory,
    validate_tone_set,
)
