"""Finite machines: types, conversions, minimization, regex builders, files."""

from .guards import (
    GuardedMachine,
    GuardedTransition,
    SummarizedEdge,
    eval_guard,
    expand_guard_to_symbols,
    parse_proposition_set,
    repair_nondeterminism,
    subset_alphabet,
    summarize_transitions,
)
from .io import load_machine, machine_from_dict, machine_to_dict, save_machine
from .machines import (
    EPSILON,
    MealyMachine,
    MooreMachine,
    OutputValue,
    Sequence,
    Symbol,
    alphabets_match,
    format_sequence,
    make_alphabet,
    make_output_alphabet,
    parse_sequence,
    sequence_labels,
)
from .regexes import from_regex_union, regex_to_dfa
from .transform import (
    canonical,
    complete_with_halt,
    isomorphic,
    mealy_to_moore,
    minimize,
    moore_to_mealy,
    remove_halt_states,
)

__all__ = [
    "EPSILON",
    "GuardedMachine",
    "GuardedTransition",
    "MealyMachine",
    "MooreMachine",
    "OutputValue",
    "Sequence",
    "SummarizedEdge",
    "Symbol",
    "alphabets_match",
    "canonical",
    "complete_with_halt",
    "eval_guard",
    "expand_guard_to_symbols",
    "format_sequence",
    "from_regex_union",
    "isomorphic",
    "load_machine",
    "machine_from_dict",
    "machine_to_dict",
    "make_alphabet",
    "make_output_alphabet",
    "mealy_to_moore",
    "minimize",
    "moore_to_mealy",
    "parse_proposition_set",
    "parse_sequence",
    "regex_to_dfa",
    "remove_halt_states",
    "repair_nondeterminism",
    "save_machine",
    "sequence_labels",
    "subset_alphabet",
    "summarize_transitions",
]
