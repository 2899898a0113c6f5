"""The preference-based learning loop over the symbolic observation table.

One round: fill the table symbolically (fresh variables, pairwise preference
queries, unification), expand until closed and consistent, solve the
constraints into a concrete hypothesis, and submit an equivalence query.
Counterexamples land in the prefix set with their true value bound onto the
witness variable's class. The loop ends when the teacher accepts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Protocol

from .automata.machines import MooreMachine, Sequence, Symbol
from .constraints import ConstraintStore
from .errors import (
    CyclicOrder,
    InconsistentTeacher,
    Unsatisfiable,
    ValueConflict,
)
from .solver import Solution, solve
from .table import SymbolicTable

# phase-space origin: one state (the initial row), no known representatives
TRACE_START = (1, 0)


class Teacher(Protocol):
    def pref_query(self, s1: Sequence, s2: Sequence) -> int: ...

    def equivalence_query(self, hypothesis: MooreMachine): ...


@dataclass(frozen=True)
class TraceEvent:
    kind: str  # closure | consistency | eq_query
    n_states: int
    n_known: int
    pref_queries_so_far: int
    unique_sequences: int


@dataclass
class TerminationTrace:
    """Ordered expansion and query events; paths start at TRACE_START."""

    events: list[TraceEvent] = field(default_factory=list)

    def add(self, kind: str, n_states: int, n_known: int, stats: "RunStats") -> None:
        self.events.append(
            TraceEvent(kind, n_states, n_known, stats.pref_queries, stats.unique_sequences)
        )

    def path(self) -> list[tuple[int, int]]:
        """(n_states, n_known) points including the fixed start."""
        return [TRACE_START] + [(e.n_states, e.n_known) for e in self.events]

    def eq_events(self) -> list[TraceEvent]:
        return [e for e in self.events if e.kind == "eq_query"]

    def to_jsonl(self) -> str:
        lines = [
            json.dumps(
                {
                    "kind": e.kind,
                    "n_states": e.n_states,
                    "n_known": e.n_known,
                    "pref_queries_so_far": e.pref_queries_so_far,
                    "unique_sequences": e.unique_sequences,
                }
            )
            for e in self.events
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding="utf-8")


@dataclass
class RunStats:
    pref_queries: int = 0
    eq_queries: int = 0
    unique_sequences: int = 0
    max_representatives: int = 0
    max_counterexample_len: int = 0


@dataclass
class Hypothesis:
    machine: MooreMachine
    row_to_state: dict[tuple[int, ...], int]
    solution: Solution
    n_states: int
    n_known: int
    n_unknown: int


@dataclass
class RemapResult:
    machine: MooreMachine
    trace: TerminationTrace
    stats: RunStats


Observer = Callable[[SymbolicTable, ConstraintStore, TerminationTrace, RunStats], None]


def symbolic_fill(
    table: SymbolicTable,
    store: ConstraintStore,
    teacher: Teacher,
    stats: RunStats,
) -> None:
    """Create variables for unmapped cells and query all new sequence pairs.

    Every pair of distinct sequences with at least one new member is queried
    exactly once, so a session's cumulative preference-query count is exactly
    C(|context|, 2). Ends with a unification pass.
    """
    old = list(table.context)
    new: list[Sequence] = []
    for s, e, seq in table.iter_cells():
        if seq not in table.context:
            var = table.fresh_var()
            table.context[seq] = var
            store.register(var)
            new.append(seq)
        table.cells[(s, e)] = table.context[seq]
    for i, s1 in enumerate(new):
        for s2 in new[i + 1 :]:
            p = teacher.pref_query(s1, s2)
            stats.pref_queries += 1
            store.record_preference(table.context[s1], table.context[s2], p)
        for s2 in old:
            p = teacher.pref_query(s1, s2)
            stats.pref_queries += 1
            store.record_preference(table.context[s1], table.context[s2], p)
    store.unify(table)
    stats.unique_sequences = len(table.context)
    stats.max_representatives = max(
        stats.max_representatives, len(store.representatives())
    )


def _check_class_budget(
    store: ConstraintStore, output_alphabet: tuple[Fraction, ...]
) -> None:
    """Fail fast once there are more classes than output values.

    After a fill every pair of classes carries a strict inequality, so an
    over-budget store is already unsatisfiable (or cyclic); surfacing it here
    keeps an inconsistent teacher from expanding the table forever.
    """
    reps = store.representatives()
    if len(reps) <= len(output_alphabet):
        return
    solve(store, reps, output_alphabet)
    raise Unsatisfiable(
        f"{len(reps)} representative classes for {len(output_alphabet)} output values"
    )


def make_closed_and_consistent(
    table: SymbolicTable,
    store: ConstraintStore,
    teacher: Teacher,
    stats: RunStats,
    trace: TerminationTrace,
    output_alphabet: tuple[Fraction, ...] | None = None,
) -> None:
    """Expand the table until it is unified, closed, and consistent.

    Consistency is restored first (add the separating suffix), then closure
    (promote the missing successor row into S); each expansion is followed
    by a symbolic fill and appended to the trace.
    """
    while True:
        if output_alphabet is not None:
            _check_class_budget(store, output_alphabet)
        consistent, witness = table.is_consistent()
        if not consistent:
            _s1, _s2, sym, suffix = witness
            table.add_suffix((sym,) + suffix)
            symbolic_fill(table, store, teacher, stats)
            trace.add("consistency", _distinct_rows(table), len(store.values), stats)
            continue
        closed, witness = table.is_closed()
        if not closed:
            s, sym = witness
            table.add_prefix(s + (sym,))
            symbolic_fill(table, store, teacher, stats)
            trace.add("closure", _distinct_rows(table), len(store.values), stats)
            continue
        return


def _distinct_rows(table: SymbolicTable) -> int:
    return len({table.row(s) for s in table.prefixes})


def make_hypothesis(
    table: SymbolicTable,
    store: ConstraintStore,
    output_alphabet: tuple[Fraction, ...],
    solution: Solution | None = None,
) -> Hypothesis:
    """Concrete machine from a unified, closed, consistent table.

    States are the distinct prefix rows, transitions follow row successors,
    and labels come from a satisfying solution (found by the solver unless
    one is supplied).
    """
    row_to_state: dict[tuple[int, ...], int] = {}
    state_rows: list[tuple[int, ...]] = []
    for s in table.prefixes:
        r = table.row(s)
        if r not in row_to_state:
            row_to_state[r] = len(state_rows)
            state_rows.append(r)
    n = len(state_rows)
    delta = [[0] * len(table.alphabet) for _ in range(n)]
    seen_state = [False] * n
    for s in table.prefixes:
        src = row_to_state[table.row(s)]
        if seen_state[src]:
            continue
        seen_state[src] = True
        for sym in table.alphabet:
            delta[src][sym.id] = row_to_state[table.row(s + (sym,))]
    reps = store.representatives()
    if solution is None:
        solution = solve(store, reps, output_alphabet)
    eps_index = table.suffixes.index(())
    labels = tuple(solution[r[eps_index]] for r in state_rows)
    machine = MooreMachine(
        input_alphabet=table.alphabet,
        output_alphabet=output_alphabet,
        delta=tuple(tuple(row) for row in delta),
        labels=labels,
        initial=row_to_state[table.row(())],
    )
    n_known = len(store.values)
    return Hypothesis(
        machine=machine,
        row_to_state=row_to_state,
        solution=solution,
        n_states=n,
        n_known=n_known,
        n_unknown=len(reps) - n_known,
    )


def process_counterexample(
    table: SymbolicTable,
    store: ConstraintStore,
    sequence: Sequence,
    value: Fraction,
    teacher: Teacher,
    stats: RunStats,
) -> None:
    """Add the counterexample and its prefixes to S and bind its true value."""
    table.add_prefix(sequence)
    symbolic_fill(table, store, teacher, stats)
    store.bind_value(table.context[sequence], value)
    store.unify(table)
    stats.max_representatives = max(
        stats.max_representatives, len(store.representatives())
    )
    stats.max_counterexample_len = max(stats.max_counterexample_len, len(sequence))


def remap(
    input_alphabet: tuple[Symbol, ...],
    output_alphabet: tuple[Fraction, ...],
    teacher: Teacher,
    observer: Observer | None = None,
) -> RemapResult:
    """Learn a Moore machine from preference and equivalence queries.

    Returns the accepted machine plus the termination trace and query
    counters. Contradictory teacher answers abort the session with
    InconsistentTeacher carrying a diagnostic transcript.
    """
    if not input_alphabet or not output_alphabet:
        raise ValueError("alphabets must be nonempty")
    table = SymbolicTable(input_alphabet)
    store = ConstraintStore()
    stats = RunStats()
    trace = TerminationTrace()
    if observer is not None:
        observer(table, store, trace, stats)
    try:
        symbolic_fill(table, store, teacher, stats)
        while True:
            make_closed_and_consistent(
                table, store, teacher, stats, trace, output_alphabet
            )
            hypothesis = make_hypothesis(table, store, output_alphabet)
            trace.add("eq_query", hypothesis.n_states, hypothesis.n_known, stats)
            if observer is not None:
                observer(table, store, trace, stats)
            feedback = teacher.equivalence_query(hypothesis.machine)
            stats.eq_queries += 1
            if feedback is None:
                if observer is not None:
                    observer(table, store, trace, stats)
                return RemapResult(hypothesis.machine, trace, stats)
            process_counterexample(
                table, store, feedback.sequence, feedback.value, teacher, stats
            )
    except (ValueConflict, CyclicOrder, Unsatisfiable) as exc:
        transcript = "\n".join(
            [
                f"pref_queries={stats.pref_queries}",
                f"eq_queries={stats.eq_queries}",
                f"unique_sequences={stats.unique_sequences}",
                *store.dump(),
            ]
        )
        raise InconsistentTeacher(
            f"teacher answers are contradictory: {exc}", transcript=transcript
        ) from exc
