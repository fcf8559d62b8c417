"""Fair multistakeholder coverage for top-k recommendation re-ranking.

Per-buyer re-ranking that trades a submodular stakeholder-coverage objective
against a modular auxiliary objective (utility, cost per unit utility, or a
weighted composite), solved by greedy, lazy greedy, distorted greedy, or its
sampled variant, with a brute-force reference for small instances.
"""

from .core import (
    AuxMode,
    BuyerQuery,
    Catalog,
    ConfigurationError,
    FaircoverError,
    FairnessProfile,
    InstanceTooLargeError,
    ItemId,
    ItemRecord,
    ObjectiveSpec,
    ProviderCheck,
    SolveReport,
    StakeholderId,
    ValidationError,
    aux_item_values,
    aux_value,
    combined_value,
    compute_fairness_profile,
    coverage_marginal,
    coverage_value,
    fairness_deltas,
    provider_constraint_check,
    satisfies_fair_coverage,
)
from .dataio import (
    GeneratorConfig,
    SnapshotError,
    SweepAggregate,
    SweepRecord,
    SweepReport,
    generate_instance,
    load_snapshot,
    read_sweep_details,
    save_snapshot,
    write_sweep_report,
)
from .solvers import (
    BatchEntry,
    HeapEntry,
    SolverKind,
    TIE_TOLERANCE,
    check_solver_compatibility,
    solve_batch,
    solve_brute_force,
    solve_distorted_greedy,
    solve_greedy,
    solve_lazy_greedy,
    solve_one,
    solve_stochastic_distorted_greedy,
    stochastic_sample_size,
)

__version__ = "0.1.0"

__all__ = [
    "AuxMode",
    "BatchEntry",
    "BuyerQuery",
    "Catalog",
    "ConfigurationError",
    "FaircoverError",
    "FairnessProfile",
    "GeneratorConfig",
    "HeapEntry",
    "InstanceTooLargeError",
    "ItemId",
    "ItemRecord",
    "ObjectiveSpec",
    "ProviderCheck",
    "SnapshotError",
    "SolveReport",
    "SolverKind",
    "StakeholderId",
    "SweepAggregate",
    "SweepRecord",
    "SweepReport",
    "TIE_TOLERANCE",
    "ValidationError",
    "aux_item_values",
    "aux_value",
    "check_solver_compatibility",
    "combined_value",
    "compute_fairness_profile",
    "coverage_marginal",
    "coverage_value",
    "fairness_deltas",
    "generate_instance",
    "load_snapshot",
    "provider_constraint_check",
    "read_sweep_details",
    "satisfies_fair_coverage",
    "save_snapshot",
    "solve_batch",
    "solve_brute_force",
    "solve_distorted_greedy",
    "solve_greedy",
    "solve_lazy_greedy",
    "solve_one",
    "solve_stochastic_distorted_greedy",
    "stochastic_sample_size",
    "write_sweep_report",
]
