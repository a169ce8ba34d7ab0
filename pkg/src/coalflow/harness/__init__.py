from .config import (
    ExperimentConfig,
    emit_default_config,
    from_plain,
    load_experiment_config,
    to_plain,
    validate_experiment_config,
)
from .case_study import CASE_INITIATOR, build_case_task, generate_network, run_case_study
from .sweep import (
    SUMMARY_HEADER,
    SWEEP_HEADER,
    SummaryRow,
    SweepRecord,
    read_sweep_csv,
    run_breadth_sweep,
    run_trial,
    summarize_sweep,
    trace_stabilization,
    trial_seed,
    write_summary_csv,
    write_sweep_csv,
)

__all__ = [
    "ExperimentConfig",
    "emit_default_config",
    "from_plain",
    "load_experiment_config",
    "to_plain",
    "validate_experiment_config",
    "CASE_INITIATOR",
    "build_case_task",
    "generate_network",
    "run_case_study",
    "SUMMARY_HEADER",
    "SWEEP_HEADER",
    "SummaryRow",
    "SweepRecord",
    "read_sweep_csv",
    "run_breadth_sweep",
    "run_trial",
    "summarize_sweep",
    "trace_stabilization",
    "trial_seed",
    "write_summary_csv",
    "write_sweep_csv",
]
