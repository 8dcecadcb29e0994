"""Tabular RL vs NARS-style sensorimotor comparison toolkit."""

from narsrl._core import (
    EnvOptions,
    EnvSpec,
    Environment,
    ExperimentConfig,
    NarsAgent,
    NarsConfig,
    QHyperParams,
    QTable,
    Rng,
    StepOutcome,
    aggregate_dir,
    epsilon_at,
    greedy_action,
    load_experiment_config,
    make_env,
    mix_seed,
    nal,
    narsese,
    parse_experiment_config,
    plot_svg,
    q_update,
    run_experiment,
    select_action,
)

__all__ = [
    "EnvOptions",
    "EnvSpec",
    "Environment",
    "ExperimentConfig",
    "NarsAgent",
    "NarsConfig",
    "QHyperParams",
    "QTable",
    "Rng",
    "StepOutcome",
    "aggregate_dir",
    "epsilon_at",
    "greedy_action",
    "load_experiment_config",
    "make_env",
    "mix_seed",
    "nal",
    "narsese",
    "parse_experiment_config",
    "plot_svg",
    "q_update",
    "run_experiment",
    "select_action",
]
