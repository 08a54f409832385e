"""In-memory TTL cache, workload server and benchmark client."""

from ._core import (
    CacheOutcome,
    ExperimentConfig,
    ExperimentReport,
    Reduction,
    RequestSample,
    SimulatedClock,
    TtlCache,
    WorkloadServer,
    compute_reduction,
    emit_plot_data,
    fetch_server_stats,
    render_comparison,
    render_hit_miss,
    render_report,
    report_from_json,
    report_to_json,
    reset_server,
    run_experiment,
)

__all__ = [
    "CacheOutcome",
    "ExperimentConfig",
    "ExperimentReport",
    "Reduction",
    "RequestSample",
    "SimulatedClock",
    "TtlCache",
    "WorkloadServer",
    "compute_reduction",
    "emit_plot_data",
    "fetch_server_stats",
    "render_comparison",
    "render_hit_miss",
    "render_report",
    "report_from_json",
    "report_to_json",
    "reset_server",
    "run_experiment",
]
