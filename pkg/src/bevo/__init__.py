"""Iterated belief change over finite propositional transition systems.

States are interpretations of a fixed fluent list, encoded as bitmask
integers; belief states and observations are frozen sets of states.  The
package provides action progression (update), ranking-based revision with a
Hamming-distance default, belief evolution over action/observation
histories with repair of inconsistent ones, small-scope property suites,
and a line-oriented file format with a CLI.
"""

from .kernel import (
    MAX_FLUENTS,
    NULL_ACTION,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    StateSet,
    TransitionSystem,
    complete_transitions,
    format_state,
    format_state_set,
    is_deterministic,
    make_signature,
    models,
    state_index,
    true_fluents,
    universe,
)
from .update import ActionTrajectory, successor, update, update_seq
from .revision import (
    FaithfulRanking,
    RankingAssignment,
    ShiftedRanking,
    check_faithful,
    combined_change,
    dalal_assignment,
    dalal_ranking,
    min_states,
    revise,
    shift_ranking,
)
from .evolution import (
    MAX_REPAIR_POSITIONS,
    BeliefTrajectory,
    EvolutionResult,
    InconsistentView,
    ObservationTrajectory,
    ReliabilityFunction,
    WorldView,
    consistent,
    constant,
    evolve,
    evolve_consistent,
    evolve_skeptical,
    final_state_shortcut,
    fixed_weights,
    iterated_revise,
    minimal_repair_candidates,
    padded_view,
    preimage,
    recency,
    repairs,
    weakenings,
)
from .dsl import (
    DomainDoc,
    ParseError,
    RankingDoc,
    ScenarioDoc,
    parse_domain,
    parse_formula,
    parse_ranking,
    parse_scenario,
    parse_state_set,
    ranking_assignment,
    result_from_json,
    serialize_domain,
    serialize_formula,
    serialize_ranking,
    serialize_result,
    serialize_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_FLUENTS",
    "MAX_REPAIR_POSITIONS",
    "NULL_ACTION",
    "ActionTrajectory",
    "And",
    "Atom",
    "BeliefTrajectory",
    "DomainDoc",
    "EvolutionResult",
    "FaithfulRanking",
    "Formula",
    "Iff",
    "Implies",
    "InconsistentView",
    "Not",
    "ObservationTrajectory",
    "Or",
    "ParseError",
    "RankingAssignment",
    "RankingDoc",
    "ReliabilityFunction",
    "ScenarioDoc",
    "ShiftedRanking",
    "Signature",
    "StateSet",
    "TransitionSystem",
    "WorldView",
    "check_faithful",
    "combined_change",
    "complete_transitions",
    "consistent",
    "constant",
    "dalal_assignment",
    "dalal_ranking",
    "evolve",
    "evolve_consistent",
    "evolve_skeptical",
    "final_state_shortcut",
    "fixed_weights",
    "format_state",
    "format_state_set",
    "is_deterministic",
    "iterated_revise",
    "make_signature",
    "min_states",
    "minimal_repair_candidates",
    "models",
    "padded_view",
    "parse_domain",
    "parse_formula",
    "parse_ranking",
    "parse_scenario",
    "parse_state_set",
    "preimage",
    "ranking_assignment",
    "recency",
    "repairs",
    "result_from_json",
    "revise",
    "serialize_domain",
    "serialize_formula",
    "serialize_ranking",
    "serialize_result",
    "serialize_scenario",
    "shift_ranking",
    "state_index",
    "successor",
    "true_fluents",
    "universe",
    "update",
    "update_seq",
    "weakenings",
]
