"""Learning reward machines from preference and equivalence queries.

The library learns Moore machines (convertible to Mealy-style reward
machines) by filling a symbolic observation table with preference answers,
unifying variables into equivalence classes, and solving the resulting
finite-domain order constraints into concrete hypotheses.
"""

from .automata import (
    GuardedMachine,
    MealyMachine,
    MooreMachine,
    Symbol,
    complete_with_halt,
    from_regex_union,
    isomorphic,
    load_machine,
    make_alphabet,
    make_output_alphabet,
    mealy_to_moore,
    minimize,
    moore_to_mealy,
    repair_nondeterminism,
    save_machine,
    summarize_transitions,
)
from .constraints import ConstraintStore
from .errors import (
    BadConfig,
    CyclicOrder,
    InconsistentTeacher,
    InvalidAnswer,
    RemapError,
    SessionClosed,
    Unsatisfiable,
    ValueConflict,
    WrongQuestionId,
)
from .harness import (
    EvalReport,
    accuracy,
    aggregate_scaling,
    gen_eval_set,
    isomorphism_probability,
    scaling_stats,
)
from .learner import Hypothesis, RemapResult, RunStats, TerminationTrace, remap
from .lstar import lstar_baseline
from .session import SessionManager
from .solver import solve
from .table import SymbolicTable
from .teacher import (
    CounterexampleFeedback,
    MembershipOracle,
    SimulatedTeacher,
    TeacherConfig,
    derive_seed,
    find_counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "BadConfig",
    "ConstraintStore",
    "CounterexampleFeedback",
    "CyclicOrder",
    "EvalReport",
    "GuardedMachine",
    "Hypothesis",
    "InconsistentTeacher",
    "InvalidAnswer",
    "MealyMachine",
    "MembershipOracle",
    "MooreMachine",
    "RemapError",
    "RemapResult",
    "RunStats",
    "SessionClosed",
    "SessionManager",
    "SimulatedTeacher",
    "Symbol",
    "SymbolicTable",
    "TeacherConfig",
    "TerminationTrace",
    "Unsatisfiable",
    "ValueConflict",
    "WrongQuestionId",
    "accuracy",
    "aggregate_scaling",
    "complete_with_halt",
    "derive_seed",
    "find_counterexample",
    "from_regex_union",
    "gen_eval_set",
    "isomorphic",
    "isomorphism_probability",
    "load_machine",
    "lstar_baseline",
    "make_alphabet",
    "make_output_alphabet",
    "mealy_to_moore",
    "minimize",
    "moore_to_mealy",
    "remap",
    "repair_nondeterminism",
    "save_machine",
    "scaling_stats",
    "solve",
    "summarize_transitions",
]
