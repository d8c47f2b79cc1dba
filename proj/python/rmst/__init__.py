"""Robust minimum spanning tree solvers (min-max, min-max regret, two-stage)."""

from ._rmst import (
    MinMaxInstance,
    RmstError,
    TwoStageInstance,
    baseline_mean_scenario,
    branch_and_bound_minmax,
    brute_force_2stage,
    brute_force_minmax,
    brute_force_regret,
    compute_r_2stage,
    compute_r_minmax,
    evaluate_2stage,
    evaluate_minmax,
    evaluate_regret,
    find_min_feasible_C,
    find_min_feasible_C_2stage,
    gen_3sat,
    gen_label_cover,
    gen_random,
    gen_set_cover,
    load_instance,
    load_instance_file,
    per_iteration_bound_multiplier,
    run_cli,
    solve_2stage_approx,
    solve_minmax_approx,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
