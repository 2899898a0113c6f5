"""Finite-machine representations: Moore and Mealy machines over small alphabets.

Machines are immutable after construction and safe to share between tasks.
States are dense integer indices; outputs are exact rationals drawn from a
finite, sorted output alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import IncompleteMachine, UnknownSymbol

OutputValue = Fraction


@dataclass(frozen=True)
class Symbol:
    """One input-alphabet element: a dense index plus a display label."""

    id: int
    display: str

    def __post_init__(self):
        if not self.display:
            raise ValueError("symbol display must be nonempty")


Sequence = tuple[Symbol, ...]
EPSILON: Sequence = ()


def make_alphabet(displays: Iterable[str]) -> tuple[Symbol, ...]:
    """Build an input alphabet from display labels (ids follow list order)."""
    displays = list(displays)
    if len(set(displays)) != len(displays):
        raise ValueError(f"duplicate symbol displays: {displays}")
    return tuple(Symbol(i, d) for i, d in enumerate(displays))


def make_output_alphabet(values: Iterable[Fraction | int | str]) -> tuple[Fraction, ...]:
    """Normalize output values to a sorted tuple of exact rationals."""
    vals = sorted(Fraction(v) for v in values)
    if len(set(vals)) != len(vals):
        raise ValueError(f"duplicate output values: {vals}")
    return tuple(vals)


def parse_sequence(alphabet: tuple[Symbol, ...], labels: Iterable[str]) -> Sequence:
    """Turn a list of display labels into a sequence over `alphabet`."""
    by_display = {sym.display: sym for sym in alphabet}
    out = []
    for lab in labels:
        if lab not in by_display:
            raise UnknownSymbol(f"symbol {lab!r} not in alphabet {sorted(by_display)}")
        out.append(by_display[lab])
    return tuple(out)


def sequence_labels(seq: Sequence) -> list[str]:
    return [sym.display for sym in seq]


def format_sequence(seq: Sequence) -> str:
    """Human-readable form; the empty sequence renders as the epsilon sign."""
    return "".join(sym.display for sym in seq) if seq else "ε"


def _check_symbol(alphabet: tuple[Symbol, ...], sym: Symbol) -> None:
    if sym.id >= len(alphabet) or alphabet[sym.id].display != sym.display:
        raise UnknownSymbol(f"symbol {sym.display!r} not in alphabet")


@dataclass(frozen=True)
class MooreMachine:
    """Complete deterministic transducer with outputs on states."""

    input_alphabet: tuple[Symbol, ...]
    output_alphabet: tuple[Fraction, ...]
    delta: tuple[tuple[int, ...], ...]  # delta[state][symbol.id] -> state
    labels: tuple[Fraction, ...]
    initial: int = 0

    def __post_init__(self):
        n = len(self.delta)
        if len(self.labels) != n:
            raise ValueError("labels must cover every state")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        out_set = set(self.output_alphabet)
        for row in self.delta:
            if len(row) != len(self.input_alphabet):
                raise IncompleteMachine("delta must be total over the alphabet")
            if any(not 0 <= q < n for q in row):
                raise ValueError("transition target out of range")
        for lab in self.labels:
            if lab not in out_set:
                raise ValueError(f"label {lab} not in output alphabet")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, state: int, sym: Symbol) -> int:
        _check_symbol(self.input_alphabet, sym)
        return self.delta[state][sym.id]

    def run(self, seq: Sequence) -> Fraction:
        """Classify a sequence: the label of the state it reaches from initial."""
        q = self.initial
        for sym in seq:
            _check_symbol(self.input_alphabet, sym)
            q = self.delta[q][sym.id]
        return self.labels[q]


@dataclass(frozen=True)
class MealyMachine:
    """Deterministic transducer with outputs on transitions.

    The transition map may be partial: states with no outgoing transitions
    are terminal (the usual shape of reward-machine specifications before
    completion). `delta` and `outputs` must be defined for the same keys.
    """

    input_alphabet: tuple[Symbol, ...]
    output_alphabet: tuple[Fraction, ...]
    n_states: int
    delta: Mapping[tuple[int, int], int]  # (state, symbol.id) -> state
    outputs: Mapping[tuple[int, int], Fraction]
    initial: int = 0

    def __post_init__(self):
        if set(self.delta) != set(self.outputs):
            raise ValueError("delta and outputs must be defined for the same pairs")
        out_set = set(self.output_alphabet)
        for (q, a), q2 in self.delta.items():
            if not (0 <= q < self.n_states and 0 <= q2 < self.n_states):
                raise ValueError("transition endpoint out of range")
            if not 0 <= a < len(self.input_alphabet):
                raise ValueError("transition symbol out of range")
            if self.outputs[(q, a)] not in out_set:
                raise ValueError("transition output not in output alphabet")
        if not 0 <= self.initial < self.n_states:
            raise ValueError("initial state out of range")

    @property
    def terminal_states(self) -> frozenset[int]:
        has_out = {q for (q, _a) in self.delta}
        return frozenset(q for q in range(self.n_states) if q not in has_out)

    def is_complete(self) -> bool:
        return len(self.delta) == self.n_states * len(self.input_alphabet)

    def run(self, seq: Sequence) -> Fraction:
        """Output of the final transition taken; undefined for the empty sequence."""
        if not seq:
            raise ValueError("a Mealy machine has no output for the empty sequence")
        q = self.initial
        out = None
        for sym in seq:
            _check_symbol(self.input_alphabet, sym)
            key = (q, sym.id)
            if key not in self.delta:
                raise IncompleteMachine(
                    f"no transition from state {q} on {sym.display!r}"
                )
            out = self.outputs[key]
            q = self.delta[key]
        return out


def alphabets_match(a: tuple[Symbol, ...], b: tuple[Symbol, ...]) -> bool:
    return tuple(s.display for s in a) == tuple(s.display for s in b)
