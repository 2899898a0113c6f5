"""Machine surgery: halt completion, Moore/Mealy conversion, minimization.

The canonical form used throughout is a BFS renumbering from the initial
state with symbols taken in alphabet order, so two machines are isomorphic
exactly when their minimized canonical forms are equal field-for-field.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from ..errors import AlphabetMismatch, IncompleteMachine
from .machines import MealyMachine, MooreMachine, alphabets_match


def complete_with_halt(m: MealyMachine, halt_output: Fraction) -> MealyMachine:
    """Route every undefined transition to a fresh absorbing halt state.

    A machine that is already complete is returned unchanged (no unreachable
    halt state is added).
    """
    halt_output = Fraction(halt_output)
    if m.is_complete():
        return m
    halt = m.n_states
    delta = dict(m.delta)
    outputs = dict(m.outputs)
    for q in range(m.n_states + 1):
        for a in range(len(m.input_alphabet)):
            if (q, a) not in delta:
                delta[(q, a)] = halt
                outputs[(q, a)] = halt_output
    out_alpha = m.output_alphabet
    if halt_output not in out_alpha:
        out_alpha = tuple(sorted(set(out_alpha) | {halt_output}))
    return MealyMachine(
        input_alphabet=m.input_alphabet,
        output_alphabet=out_alpha,
        n_states=m.n_states + 1,
        delta=delta,
        outputs=outputs,
        initial=m.initial,
    )


def remove_halt_states(m: MealyMachine, halt_output: Fraction) -> MealyMachine:
    """Strip absorbing states whose self-loops all emit `halt_output`.

    Inverse of `complete_with_halt` on its image: transitions into removed
    states disappear, leaving the original partial machine.
    """
    halt_output = Fraction(halt_output)
    halts = set()
    for q in range(m.n_states):
        keys = [(q, a) for a in range(len(m.input_alphabet))]
        if not all(k in m.delta for k in keys):
            continue
        if all(m.delta[k] == q and m.outputs[k] == halt_output for k in keys):
            halts.add(q)
    if m.initial in halts:
        halts.discard(m.initial)
    if not halts:
        return m
    keep = [q for q in range(m.n_states) if q not in halts]
    renum = {q: i for i, q in enumerate(keep)}
    delta = {}
    outputs = {}
    for (q, a), q2 in m.delta.items():
        if q in halts or q2 in halts:
            continue
        delta[(renum[q], a)] = renum[q2]
        outputs[(renum[q], a)] = m.outputs[(q, a)]
    return MealyMachine(
        input_alphabet=m.input_alphabet,
        output_alphabet=m.output_alphabet,
        n_states=len(keep),
        delta=delta,
        outputs=outputs,
        initial=renum[m.initial],
    )


def moore_to_mealy(m: MooreMachine) -> MealyMachine:
    """Push state labels onto transitions: output(q, a) = label(delta(q, a))."""
    delta = {}
    outputs = {}
    for q in range(m.n_states):
        for a in range(len(m.input_alphabet)):
            delta[(q, a)] = m.delta[q][a]
            outputs[(q, a)] = m.labels[m.delta[q][a]]
    return MealyMachine(
        input_alphabet=m.input_alphabet,
        output_alphabet=m.output_alphabet,
        n_states=m.n_states,
        delta=delta,
        outputs=outputs,
        initial=m.initial,
    )


def mealy_to_moore(m: MealyMachine, initial_label: Fraction | None = None) -> MooreMachine:
    """Split states by incoming output value.

    Moore states are reachable (state, output) pairs; the output of the pair
    becomes the state label. The initial state's label only affects the
    classification of the empty sequence and defaults to the least output
    value; pass `initial_label` to pin it (e.g. for exact round trips).
    """
    if not m.is_complete():
        raise IncompleteMachine("conversion requires a total transition function")
    if initial_label is None:
        initial_label = min(m.output_alphabet)
    initial_label = Fraction(initial_label)
    if initial_label not in m.output_alphabet:
        raise ValueError(f"initial label {initial_label} not in output alphabet")
    start = (m.initial, initial_label)
    index = {start: 0}
    order = [start]
    queue = deque([start])
    edges: dict[tuple[int, int], tuple[int, Fraction]] = {}
    while queue:
        q, lab = queue.popleft()
        src = index[(q, lab)]
        for a in range(len(m.input_alphabet)):
            q2 = m.delta[(q, a)]
            out = m.outputs[(q, a)]
            tgt = (q2, out)
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
                queue.append(tgt)
            edges[(src, a)] = (index[tgt], out)
    n = len(order)
    delta = [[0] * len(m.input_alphabet) for _ in range(n)]
    for (src, a), (tgt, _out) in edges.items():
        delta[src][a] = tgt
    labels = tuple(lab for (_q, lab) in order)
    return MooreMachine(
        input_alphabet=m.input_alphabet,
        output_alphabet=m.output_alphabet,
        delta=tuple(tuple(row) for row in delta),
        labels=labels,
        initial=0,
    )


def _reachable(m: MooreMachine) -> list[int]:
    seen = [m.initial]
    seen_set = {m.initial}
    queue = deque([m.initial])
    while queue:
        q = queue.popleft()
        for a in range(len(m.input_alphabet)):
            q2 = m.delta[q][a]
            if q2 not in seen_set:
                seen_set.add(q2)
                seen.append(q2)
                queue.append(q2)
    return seen


def canonical(m: MooreMachine) -> MooreMachine:
    """BFS renumbering from the initial state, symbols in alphabet order.

    Unreachable states are dropped. Two machines related by a state
    permutation canonicalize to identical objects.
    """
    order = _reachable(m)
    renum = {q: i for i, q in enumerate(order)}
    n = len(order)
    delta = tuple(
        tuple(renum[m.delta[q][a]] for a in range(len(m.input_alphabet))) for q in order
    )
    labels = tuple(m.labels[q] for q in order)
    return MooreMachine(
        input_alphabet=m.input_alphabet,
        output_alphabet=m.output_alphabet,
        delta=delta,
        labels=labels,
        initial=0,
    )


def minimize(m: MooreMachine) -> MooreMachine:
    """Smallest language-equivalent machine, in canonical BFS numbering.

    Partition refinement seeded by state labels (Moore's algorithm); the
    quotient is then canonicalized so minimize is idempotent and usable for
    isomorphism checks.
    """
    reach = _reachable(m)
    block: dict[int, int] = {}
    by_label: dict[Fraction, int] = {}
    for q in reach:
        lab = m.labels[q]
        if lab not in by_label:
            by_label[lab] = len(by_label)
        block[q] = by_label[lab]
    n_sym = len(m.input_alphabet)
    while True:
        sig_index: dict[tuple, int] = {}
        new_block = {}
        for q in reach:
            sig = (block[q], tuple(block[m.delta[q][a]] for a in range(n_sym)))
            if sig not in sig_index:
                sig_index[sig] = len(sig_index)
            new_block[q] = sig_index[sig]
        if len(sig_index) == len(set(block.values())):
            block = new_block
            break
        block = new_block
    n_blocks = len(set(block.values()))
    delta = [[0] * n_sym for _ in range(n_blocks)]
    labels: list[Fraction | None] = [None] * n_blocks
    for q in reach:
        b = block[q]
        labels[b] = m.labels[q]
        for a in range(n_sym):
            delta[b][a] = block[m.delta[q][a]]
    quotient = MooreMachine(
        input_alphabet=m.input_alphabet,
        output_alphabet=m.output_alphabet,
        delta=tuple(tuple(row) for row in delta),
        labels=tuple(labels),
        initial=block[m.initial],
    )
    return canonical(quotient)


def isomorphic(m1: MooreMachine, m2: MooreMachine) -> bool:
    """True iff the minimized canonical forms agree state-for-state."""
    if not alphabets_match(m1.input_alphabet, m2.input_alphabet):
        raise AlphabetMismatch(
            f"{[s.display for s in m1.input_alphabet]} vs "
            f"{[s.display for s in m2.input_alphabet]}"
        )
    c1 = minimize(m1)
    c2 = minimize(m2)
    return c1.delta == c2.delta and c1.labels == c2.labels
