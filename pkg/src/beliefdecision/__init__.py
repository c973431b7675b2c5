"""Decision-making under belief-function uncertainty.

Mass functions on finite frames, criteria for decision under total
ignorance, complete-preorder criteria over evidential lotteries,
partial preference relations, lower-prevision rules (maximality and
e-admissibility), and goal-based act scoring, with a command-line
front end (``beliefdec``).
"""

from .core import (
    Act,
    Frame,
    MassFunction,
    UtilityTable,
    belief,
    belief_table,
    credal_vertices,
    mass_from_belief,
    nonspecificity,
    pignistic,
    plausibility,
    plausibility_transform,
    pushforward,
)
from .criteria import (
    LocalPessimismIndex,
    SetUtility,
    auto_hurwicz_alpha,
    generalized_hurwicz,
    generalized_minimax_regret,
    generalized_owa_expected_utility,
    jaffray_utility,
    linear_set_utility,
    lower_expectation,
    pignistic_expected_utility,
    upper_expectation,
)
from .errors import (
    BeliefDecisionError,
    FrameMismatchError,
    FrameSizeError,
    InvalidMassError,
    NotABeliefFunctionError,
    SizeLimitError,
    SolverError,
    UndefinedMeasureError,
    ValidationError,
)
from .goals import (
    GoalSystem,
    classification_scores,
    deterministic_score,
    expected_score,
    goal_audit,
)
from .ignorance import (
    OwaWeights,
    PayoffMatrix,
    degree_of_optimism,
    max_entropy_owa_weights,
    minimax_regret,
    owa_aggregate,
    prune_dominated,
    score_ignorance,
)
from .previsions import (
    Gamble,
    LinearProgram,
    e_admissible,
    e_admissible_set,
    lower_prevision,
    maximality_relation,
    simplex_solve,
    upper_prevision,
)
from .problems import DecisionProblem, parse_problem
from .relations import (
    RealMass,
    Relation,
    credal_order,
    greatest_elements,
    interval_bound_dominance,
    interval_dominance,
    interval_dominance_choice,
    maximal_elements,
    relation_from_choice_set,
    stochastic_dominance,
    transitive_closure,
)

__version__ = "0.1.0"

__all__ = [
    "Act",
    "BeliefDecisionError",
    "DecisionProblem",
    "Frame",
    "FrameMismatchError",
    "FrameSizeError",
    "Gamble",
    "GoalSystem",
    "InvalidMassError",
    "LinearProgram",
    "LocalPessimismIndex",
    "MassFunction",
    "NotABeliefFunctionError",
    "OwaWeights",
    "PayoffMatrix",
    "RealMass",
    "Relation",
    "SetUtility",
    "SizeLimitError",
    "SolverError",
    "UndefinedMeasureError",
    "UtilityTable",
    "ValidationError",
    "auto_hurwicz_alpha",
    "belief",
    "belief_table",
    "classification_scores",
    "credal_order",
    "credal_vertices",
    "degree_of_optimism",
    "deterministic_score",
    "e_admissible",
    "e_admissible_set",
    "expected_score",
    "generalized_hurwicz",
    "generalized_minimax_regret",
    "generalized_owa_expected_utility",
    "goal_audit",
    "greatest_elements",
    "interval_bound_dominance",
    "interval_dominance",
    "interval_dominance_choice",
    "jaffray_utility",
    "linear_set_utility",
    "lower_expectation",
    "lower_prevision",
    "mass_from_belief",
    "max_entropy_owa_weights",
    "maximal_elements",
    "maximality_relation",
    "minimax_regret",
    "nonspecificity",
    "owa_aggregate",
    "parse_problem",
    "pignistic",
    "pignistic_expected_utility",
    "plausibility",
    "plausibility_transform",
    "prune_dominated",
    "pushforward",
    "relation_from_choice_set",
    "score_ignorance",
    "simplex_solve",
    "stochastic_dominance",
    "transitive_closure",
    "upper_expectation",
    "upper_prevision",
]
