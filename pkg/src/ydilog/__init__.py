"""Constant Y-system solvers and Rogers dilogarithm identity verification.

The package constructs exact root-system data, solves the associated
constant systems, evolves the spectral-parameter recursion, runs y-seed
mutation cycles, and checks every identity against exact rational targets.
"""

from .cluster import ClusterSeed, CycleReport, SignCoherenceError, initial_seed, mutate, run_mutation_cycle, tropical_sign
from .dilog import dilog_oracle, normalized_weighted_sum, rogers_dilog
from .identities import (
    VerificationReport,
    expected_constant,
    level_identity_value,
    table_value,
    verify_cf_identity,
    verify_flat_specialization,
    verify_folding,
    verify_level_identity,
)
from .qsolve import (
    QSolution,
    SolveError,
    SolverConfig,
    YGrid,
    YSolution,
    change_vars,
    solve_constant_y,
    solve_q_system,
    solve_y_form,
)
from .rootsys import (
    FoldingData,
    RootSystem,
    TypeLabel,
    build_root_system,
    default_labels,
    folding,
    langlands_dual,
    parse_label,
    weight_gram,
)
from .ydynamics import (
    Trajectory,
    check_periodicity,
    evolve,
    periodic_dilog_sum,
    random_slices,
    trajectory_records,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterSeed",
    "CycleReport",
    "FoldingData",
    "QSolution",
    "RootSystem",
    "SignCoherenceError",
    "SolveError",
    "SolverConfig",
    "Trajectory",
    "TypeLabel",
    "VerificationReport",
    "YGrid",
    "YSolution",
    "build_root_system",
    "change_vars",
    "check_periodicity",
    "default_labels",
    "dilog_oracle",
    "evolve",
    "expected_constant",
    "folding",
    "initial_seed",
    "langlands_dual",
    "level_identity_value",
    "mutate",
    "normalized_weighted_sum",
    "parse_label",
    "periodic_dilog_sum",
    "random_slices",
    "rogers_dilog",
    "run_mutation_cycle",
    "solve_constant_y",
    "solve_q_system",
    "solve_y_form",
    "table_value",
    "trajectory_records",
    "tropical_sign",
    "verify_cf_identity",
    "verify_flat_specialization",
    "verify_folding",
    "verify_level_identity",
    "weight_gram",
]
