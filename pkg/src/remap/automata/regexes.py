"""Regular expressions over machine alphabets, and union-of-regex classifiers.

Supports literals (symbol displays), grouping, alternation `|` and Kleene
star `*`, which is enough to express the bench targets like `a*b` or `(ab)*`.
Construction is the textbook route: Thompson NFA, subset-construction DFA,
then a product automaton labeled by the lowest matching component index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BadRegex
from .machines import MooreMachine, Symbol
from .transform import minimize


@dataclass
class _Nfa:
    """Thompson-style NFA fragment; state 0 is implicit start of nothing."""

    n_states: int = 0
    eps: dict[int, set[int]] = field(default_factory=dict)
    edges: dict[tuple[int, int], set[int]] = field(default_factory=dict)

    def new_state(self) -> int:
        self.n_states += 1
        return self.n_states - 1

    def add_eps(self, a: int, b: int) -> None:
        self.eps.setdefault(a, set()).add(b)

    def add_edge(self, a: int, sym_id: int, b: int) -> None:
        self.edges.setdefault((a, sym_id), set()).add(b)


def _tokenize(pattern: str, alphabet: tuple[Symbol, ...]) -> list[tuple[str, int | None]]:
    # longest-match on symbol displays so multi-char labels like "{p}" work
    displays = sorted(alphabet, key=lambda s: -len(s.display))
    tokens: list[tuple[str, int | None]] = []
    i = 0
    while i < len(pattern):
        ch = pattern[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()|*":
            tokens.append((ch, None))
            i += 1
            continue
        for sym in displays:
            if pattern.startswith(sym.display, i):
                tokens.append(("sym", sym.id))
                i += len(sym.display)
                break
        else:
            raise BadRegex(f"cannot tokenize {pattern!r} at position {i}")
    return tokens


class _Parser:
    """Recursive descent over the token list; builds NFA fragments."""

    def __init__(self, tokens, nfa: _Nfa):
        self.tokens = tokens
        self.pos = 0
        self.nfa = nfa

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def parse(self) -> tuple[int, int]:
        frag = self.union()
        if self.pos != len(self.tokens):
            raise BadRegex(f"unexpected token at position {self.pos}")
        return frag

    def union(self) -> tuple[int, int]:
        frags = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            frags.append(self.concat())
        if len(frags) == 1:
            return frags[0]
        start, end = self.nfa.new_state(), self.nfa.new_state()
        for s, e in frags:
            self.nfa.add_eps(start, s)
            self.nfa.add_eps(e, end)
        return start, end

    def concat(self) -> tuple[int, int]:
        frags = []
        while self.peek() in ("sym", "("):
            frags.append(self.starred())
        if not frags:  # empty branch matches epsilon
            s = self.nfa.new_state()
            return s, s
        start, end = frags[0]
        for s, e in frags[1:]:
            self.nfa.add_eps(end, s)
            end = e
        return start, end

    def starred(self) -> tuple[int, int]:
        frag = self.atom()
        while self.peek() == "*":
            self.pos += 1
            s, e = frag
            start, end = self.nfa.new_state(), self.nfa.new_state()
            self.nfa.add_eps(start, s)
            self.nfa.add_eps(start, end)
            self.nfa.add_eps(e, s)
            self.nfa.add_eps(e, end)
            frag = (start, end)
        return frag

    def atom(self) -> tuple[int, int]:
        kind, val = self.tokens[self.pos]
        if kind == "sym":
            self.pos += 1
            s, e = self.nfa.new_state(), self.nfa.new_state()
            self.nfa.add_edge(s, val, e)
            return s, e
        if kind == "(":
            self.pos += 1
            frag = self.union()
            if self.peek() != ")":
                raise BadRegex("unbalanced parenthesis")
            self.pos += 1
            return frag
        raise BadRegex(f"unexpected token {kind!r}")


def _eps_closure(nfa: _Nfa, states: frozenset[int]) -> frozenset[int]:
    stack = list(states)
    seen = set(states)
    while stack:
        q = stack.pop()
        for q2 in nfa.eps.get(q, ()):
            if q2 not in seen:
                seen.add(q2)
                stack.append(q2)
    return frozenset(seen)


def regex_to_dfa(pattern: str, alphabet: tuple[Symbol, ...]) -> tuple[list[list[int]], list[bool]]:
    """Complete DFA for `pattern`: (transition table, accepting flags).

    State 0 is the start; a dead state is materialized as the empty subset.
    """
    nfa = _Nfa()
    tokens = _tokenize(pattern, alphabet)
    start, accept = _Parser(tokens, nfa).parse()
    d0 = _eps_closure(nfa, frozenset([start]))
    index: dict[frozenset[int], int] = {d0: 0}
    order = [d0]
    queue = deque([d0])
    table: list[list[int]] = []
    while queue:
        subset = queue.popleft()
        row = []
        for sym in alphabet:
            nxt = set()
            for q in subset:
                nxt |= nfa.edges.get((q, sym.id), set())
            closed = _eps_closure(nfa, frozenset(nxt))
            if closed not in index:
                index[closed] = len(order)
                order.append(closed)
                queue.append(closed)
            row.append(index[closed])
        table.append(row)
    accepting = [accept in subset for subset in order]
    return table, accepting


def from_regex_union(components: list[str], alphabet: tuple[Symbol, ...]) -> MooreMachine:
    """Classifier mapping s to the 1-based index of the first component
    matching it, or 0 when none matches. Output alphabet is {0..N}."""
    output_alphabet = tuple(Fraction(k) for k in range(len(components) + 1))
    if not components:
        return MooreMachine(
            input_alphabet=alphabet,
            output_alphabet=output_alphabet,
            delta=(tuple(0 for _ in alphabet),),
            labels=(Fraction(0),),
        )
    dfas = [regex_to_dfa(c, alphabet) for c in components]
    start = tuple(0 for _ in dfas)
    index = {start: 0}
    order = [start]
    queue = deque([start])
    delta_rows: list[tuple[int, ...]] = []
    while queue:
        prod = queue.popleft()
        row = []
        for a in range(len(alphabet)):
            nxt = tuple(dfas[k][0][prod[k]][a] for k in range(len(dfas)))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        delta_rows.append(tuple(row))
    labels = []
    for prod in order:
        lab = Fraction(0)
        for k in range(len(dfas)):
            if dfas[k][1][prod[k]]:
                lab = Fraction(k + 1)
                break
        labels.append(lab)
    machine = MooreMachine(
        input_alphabet=alphabet,
        output_alphabet=output_alphabet,
        delta=tuple(delta_rows),
        labels=tuple(labels),
    )
    return minimize(machine)
