"""Streaming word-count pipeline with runtime keyspace rebalancing."""

from ._core import (
    Balancer,
    BuiltinWorkload,
    ExperimentConfig,
    ExperimentRow,
    LoadReport,
    Mode,
    Ring,
    RunConfig,
    RunResult,
    Strategy,
    SweepRow,
    Token,
    WorkloadSpec,
    builtin_workload,
    compute_skew,
    hash32,
    initial_ring_for,
    preferred_hot_node,
    run_experiment1,
    run_experiment2,
    run_pipeline,
    should_rebalance,
    synthesize,
    target_counts_for_skew,
)

__all__ = [
    "Balancer",
    "BuiltinWorkload",
    "ExperimentConfig",
    "ExperimentRow",
    "LoadReport",
    "Mode",
    "Ring",
    "RunConfig",
    "RunResult",
    "Strategy",
    "SweepRow",
    "Token",
    "WorkloadSpec",
    "builtin_workload",
    "compute_skew",
    "hash32",
    "initial_ring_for",
    "preferred_hot_node",
    "run_experiment1",
    "run_experiment2",
    "run_pipeline",
    "should_rebalance",
    "synthesize",
    "target_counts_for_skew",
]
