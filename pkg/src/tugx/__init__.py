"""Efficient surplus-sharing extensions for cooperative games.

Core objects: games on up to 16 players with dense coalition tables,
allocation rules (Shapley, stand-alone, equal division, egalitarian and
proportional surplus sharing), extension operators that spread the grand
coalition's surplus over arbitrary benchmark rules, communication-graph and
coalition-structure generalizations, cohesive variants that target the best
partition value, and a harness that machine-checks the defining properties
on generated corpora.
"""

from .errors import (
    DomainViolation,
    IncompatibleSubject,
    InconsistentSystem,
    MissingStructure,
    ParseError,
    TugxError,
    UnknownName,
)
from .games import (
    GENERAL,
    MAX_PLAYERS,
    POSITIVE_SINGLETONS,
    PROFILES,
    ZERO_NORMALIZED,
    DEFAULT_TOL,
    Game,
    Tolerance,
    are_symmetric,
    is_null_player,
    iter_set_partitions,
    marginal_contribution,
    permute_game,
    random_game,
    subgame,
    unanimity_game,
)
from .solutions import (
    Allocation,
    EQUAL_DIVISION,
    ESS_VALUE,
    PS_VALUE,
    SHAPLEY,
    STAND_ALONE,
    ZERO,
    Solution,
    allocations_close,
    constant_solution,
    equal_division,
    ess_value,
    evaluate,
    lead_singleton_solution,
    named_solution,
    ps_value,
    shapley,
    shapley_permutation_oracle,
    singleton_total,
    stand_alone,
    table_solution,
    total_payoff,
)
from .operators import (
    BestPartition,
    COHESIVE_ESS_OPERATOR,
    COHESIVE_PS_OPERATOR,
    ESS_OPERATOR,
    PS_OPERATOR,
    Operator,
    WeightScheme,
    anchored_ess_operator,
    anchored_ps_operator,
    apply_cohesive_ess,
    apply_cohesive_ps,
    apply_ess_operator,
    apply_ps_operator,
    apply_weighted_operator,
    brute_force_partition_value,
    convex_weights,
    max_partition_value,
    named_operator,
    ratio_matched_game,
    surplus_matched_game,
    weighted_operator,
    wrap,
)
from .comm import (
    EE_MYERSON,
    GRAPH_ESS_OPERATOR,
    Graph,
    GraphSolution,
    MYERSON_SOLUTION,
    ZERO_GRAPH,
    all_graphs,
    complete_graph,
    component_surplus_share,
    components,
    ee_myerson,
    empty_graph,
    freeze_graph_solution,
    graph_ess_solution,
    graph_table_solution,
    myerson,
    named_graph_solution,
    restricted_game,
    solve_by_fairness_induction,
)
from .coalition import (
    AUMANN_DREZE,
    EE_AUMANN_DREZE,
    PARTITION_ESS_OPERATOR,
    Partition,
    PartitionSolution,
    ZERO_PARTITION,
    all_partitions,
    aumann_dreze,
    block_of,
    cycle_balance_residual,
    ee_aumann_dreze,
    extend_with_null,
    freeze_partition_solution,
    make_partition,
    named_partition_solution,
    partition_ess_solution,
    partition_table_solution,
    remove_player,
    solve_by_cycle_balance_induction,
    split_off,
)
from .axioms import (
    ALL_AXIOMS,
    AxiomReport,
    Corpus,
    DEFAULT_BENCHMARKS,
    Subject,
    THEOREM_SUITES,
    check_axiom,
    check_theorem_suite,
    graph_operator_subject,
    graph_subject,
    operator_subject,
    partition_operator_subject,
    partition_subject,
    value_subject,
)
from .io import GameFile, game_payload, load_game_file, parse_game_text, render_game_text

__version__ = "0.1.0"
