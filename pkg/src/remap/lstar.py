"""Classic observation-table learning generalized to Moore outputs.

The baseline twin of the preference learner: same closedness/consistency
definitions and counterexample handling (all prefixes promoted), but table
cells hold concrete values obtained from membership queries. Used for
apples-to-apples query comparisons against the preference-based loop.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .automata.machines import MooreMachine, Sequence, Symbol
from .teacher import CounterexampleFeedback

MembershipFn = Callable[[Sequence], Fraction]
EquivalenceFn = Callable[[MooreMachine], CounterexampleFeedback | None]


class _ConcreteTable:
    def __init__(self, alphabet: tuple[Symbol, ...], membership: MembershipFn):
        self.alphabet = alphabet
        self.membership = membership
        self.prefixes: list[Sequence] = [()]
        self.suffixes: list[Sequence] = [()]
        self._prefix_set = {()}
        self._suffix_set = {()}
        self.values: dict[Sequence, Fraction] = {}

    def row_sequences(self) -> list[Sequence]:
        seen = set(self.prefixes)
        rows = list(self.prefixes)
        for s in self.prefixes:
            for sym in self.alphabet:
                ext = s + (sym,)
                if ext not in seen:
                    seen.add(ext)
                    rows.append(ext)
        return rows

    def fill(self) -> None:
        for s in self.row_sequences():
            for e in self.suffixes:
                seq = s + e
                if seq not in self.values:
                    self.values[seq] = self.membership(seq)

    def row(self, s: Sequence) -> tuple[Fraction, ...]:
        return tuple(self.values[s + e] for e in self.suffixes)

    def add_prefix(self, s: Sequence) -> None:
        for k in range(1, len(s) + 1):
            p = s[:k]
            if p not in self._prefix_set:
                self._prefix_set.add(p)
                self.prefixes.append(p)

    def add_suffix(self, e: Sequence) -> None:
        for k in range(len(e) - 1, -1, -1):
            p = e[k:]
            if p not in self._suffix_set:
                self._suffix_set.add(p)
                self.suffixes.append(p)

    def inconsistency(self):
        for i, s1 in enumerate(self.prefixes):
            row1 = self.row(s1)
            for s2 in self.prefixes[i + 1 :]:
                if self.row(s2) != row1:
                    continue
                for sym in self.alphabet:
                    for e in self.suffixes:
                        if self.values[s1 + (sym,) + e] != self.values[s2 + (sym,) + e]:
                            return (sym,) + e
        return None

    def unclosed_row(self):
        prefix_rows = {self.row(s) for s in self.prefixes}
        for s in self.prefixes:
            for sym in self.alphabet:
                if self.row(s + (sym,)) not in prefix_rows:
                    return s + (sym,)
        return None


def lstar_baseline(
    input_alphabet: tuple[Symbol, ...],
    output_alphabet: tuple[Fraction, ...],
    membership: MembershipFn,
    equivalence: EquivalenceFn,
) -> MooreMachine:
    """Learn a Moore machine from membership and equivalence oracles."""
    table = _ConcreteTable(input_alphabet, membership)
    table.fill()
    while True:
        suffix = table.inconsistency()
        if suffix is not None:
            table.add_suffix(suffix)
            table.fill()
            continue
        missing = table.unclosed_row()
        if missing is not None:
            table.add_prefix(missing)
            table.fill()
            continue
        hypothesis = _hypothesis(table, output_alphabet)
        feedback = equivalence(hypothesis)
        if feedback is None:
            return hypothesis
        table.add_prefix(feedback.sequence)
        table.fill()


def _hypothesis(
    table: _ConcreteTable, output_alphabet: tuple[Fraction, ...]
) -> MooreMachine:
    row_to_state: dict[tuple[Fraction, ...], int] = {}
    state_rows: list[tuple[Fraction, ...]] = []
    for s in table.prefixes:
        r = table.row(s)
        if r not in row_to_state:
            row_to_state[r] = len(state_rows)
            state_rows.append(r)
    n = len(state_rows)
    delta = [[0] * len(table.alphabet) for _ in range(n)]
    seen = [False] * n
    for s in table.prefixes:
        src = row_to_state[table.row(s)]
        if seen[src]:
            continue
        seen[src] = True
        for sym in table.alphabet:
            delta[src][sym.id] = row_to_state[table.row(s + (sym,))]
    eps_index = table.suffixes.index(())
    labels = tuple(r[eps_index] for r in state_rows)
    return MooreMachine(
        input_alphabet=table.alphabet,
        output_alphabet=output_alphabet,
        delta=tuple(tuple(row) for row in delta),
        labels=labels,
        initial=row_to_state[table.row(())],
    )
