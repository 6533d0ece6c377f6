"""Multi-track quantum Turing machine backend for the SAT pipeline."""

from .machine import (
    BLANK,
    ConfigSuperposition,
    Configuration,
    MixedConfiguration,
    Phase,
    Rule,
    StuckConfigurationError,
    TransitionFunction,
    WellformedReport,
    check_wellformed,
    decohere,
    dump_transition,
    halting_probability,
    make_configuration,
    merge_components,
    rule,
    run_phase,
    step,
)
from .program import (
    GqtmRun,
    SatMachine,
    decode_sat_input,
    encode_sat_input,
    initial_configuration,
    run_classical_branch,
    run_sat_gqtm,
    sat_machine,
    sat_program,
)

__all__ = [
    "BLANK",
    "ConfigSuperposition",
    "Configuration",
    "GqtmRun",
    "MixedConfiguration",
    "Phase",
    "Rule",
    "SatMachine",
    "StuckConfigurationError",
    "TransitionFunction",
    "WellformedReport",
    "check_wellformed",
    "decode_sat_input",
    "decohere",
    "dump_transition",
    "encode_sat_input",
    "halting_probability",
    "initial_configuration",
    "make_configuration",
    "merge_components",
    "rule",
    "run_classical_branch",
    "run_phase",
    "run_sat_gqtm",
    "sat_machine",
    "sat_program",
    "step",
]
