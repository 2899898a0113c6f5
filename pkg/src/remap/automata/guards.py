"""Proposition-set symbols, guard formulas, and guard-level machine surgery.

Reward-machine inputs are subsets of a proposition set. Two facilities live
here: summarizing parallel symbol transitions into disjunctive-normal-form
edge labels, and repairing the specific two-guard nondeterministic pattern
that shows up in task specifications (overlapping single-proposition guards
racing to a common successor).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import UnknownSymbol, UnsupportedPattern
from .machines import MealyMachine, Symbol, make_alphabet

AND = "∧"
OR = "∨"
NOT = "¬"


def parse_proposition_set(display: str, propositions: tuple[str, ...]) -> frozenset[str]:
    """Read a symbol display as a subset of `propositions`.

    Accepts brace notation ("{}", "{a}", "{a,b}") or a bare proposition name.
    """
    text = display.strip()
    if text.startswith("{") and text.endswith("}"):
        inner = text[1:-1]
        parts = [p.strip() for p in inner.split(",") if p.strip()]
    else:
        parts = [text]
    props = frozenset(parts)
    unknown = props - set(propositions)
    if unknown:
        raise UnknownSymbol(
            f"display {display!r} mentions propositions {sorted(unknown)} "
            f"outside {list(propositions)}"
        )
    return props


def subset_alphabet(propositions: tuple[str, ...]) -> tuple[Symbol, ...]:
    """The full 2^P alphabet in bitmask order: {}, {p0}, {p1}, {p0,p1}, ..."""
    displays = []
    for mask in range(1 << len(propositions)):
        members = [p for i, p in enumerate(propositions) if mask >> i & 1]
        displays.append("{" + ",".join(members) + "}")
    return make_alphabet(displays)


# --- guard formulas -------------------------------------------------------

class _GuardParser:
    """Tiny recursive-descent parser for guards over proposition names.

    Grammar: or := and (('∨'|'|') and)*; and := not (('∧'|'&') not)*;
    not := ('¬'|'!') not | '(' or ')' | 'true' | 'false' | name.
    """

    def __init__(self, text: str, propositions: tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.props = propositions

    def error(self, what: str):
        raise ValueError(f"bad guard {self.text!r}: {what} at {self.pos}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self):
        node = self.parse_or()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return node

    def parse_or(self):
        node = self.parse_and()
        while True:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] in (OR, "|"):
                self.pos += 1
                node = ("or", node, self.parse_and())
            else:
                return node

    def parse_and(self):
        node = self.parse_not()
        while True:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] in (AND, "&"):
                self.pos += 1
                node = ("and", node, self.parse_not())
            else:
                return node

    def parse_not(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end")
        ch = self.text[self.pos]
        if ch in (NOT, "!"):
            self.pos += 1
            return ("not", self.parse_not())
        if ch == "(":
            self.pos += 1
            node = self.parse_or()
            self.skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] != ")":
                self.error("missing ')'")
            self.pos += 1
            return node
        # longest-match a proposition name or the true/false keywords
        for word in ("true", "false"):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return ("const", word == "true")
        for name in sorted(self.props, key=len, reverse=True):
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return ("atom", name)
        self.error("expected proposition")


def eval_guard(guard: str, subset: frozenset[str], propositions: tuple[str, ...]) -> bool:
    """Does the proposition subset satisfy the guard formula?"""
    node = _GuardParser(guard, propositions).parse()

    def ev(n) -> bool:
        tag = n[0]
        if tag == "const":
            return n[1]
        if tag == "atom":
            return n[1] in subset
        if tag == "not":
            return not ev(n[1])
        if tag == "and":
            return ev(n[1]) and ev(n[2])
        return ev(n[1]) or ev(n[2])

    return ev(node)


def guard_truth_table(guard: str, propositions: tuple[str, ...]) -> frozenset[frozenset[str]]:
    """The set of proposition subsets satisfying the guard."""
    subsets = []
    for mask in range(1 << len(propositions)):
        subsets.append(frozenset(p for i, p in enumerate(propositions) if mask >> i & 1))
    return frozenset(s for s in subsets if eval_guard(guard, s, propositions))


# --- guarded machines -----------------------------------------------------

@dataclass(frozen=True)
class GuardedTransition:
    src: int
    guard: str
    dst: int
    output: Fraction


@dataclass(frozen=True)
class GuardedMachine:
    """Mealy-style machine whose edges carry guard formulas over propositions.

    Unlike `MealyMachine`, transitions are a list, so overlapping guards
    (a nondeterministic specification) are representable.
    """

    propositions: tuple[str, ...]
    n_states: int
    transitions: tuple[GuardedTransition, ...]
    initial: int = 0

    def transitions_from(self, state: int) -> list[GuardedTransition]:
        return [t for t in self.transitions if t.src == state]

    def matching(self, state: int, subset: frozenset[str]) -> list[GuardedTransition]:
        return [
            t
            for t in self.transitions_from(state)
            if eval_guard(t.guard, subset, self.propositions)
        ]

    def is_deterministic(self) -> bool:
        for q in range(self.n_states):
            for mask in range(1 << len(self.propositions)):
                subset = frozenset(
                    p for i, p in enumerate(self.propositions) if mask >> i & 1
                )
                if len(self.matching(q, subset)) > 1:
                    return False
        return True

    def final_state(self, subsets: list[frozenset[str]]) -> int:
        """Run a deterministic guarded machine on a subset sequence."""
        q = self.initial
        for subset in subsets:
            matches = self.matching(q, subset)
            if len(matches) != 1:
                raise UnsupportedPattern(
                    f"state {q} has {len(matches)} transitions for {set(subset)}"
                )
            q = matches[0].dst
        return q

    def to_mealy(self) -> MealyMachine:
        """Expand guards over the full 2^P alphabet; requires determinism."""
        alphabet = subset_alphabet(self.propositions)
        delta = {}
        outputs = {}
        for q in range(self.n_states):
            for sym in alphabet:
                subset = parse_proposition_set(sym.display, self.propositions)
                matches = self.matching(q, subset)
                if len(matches) > 1:
                    raise UnsupportedPattern(
                        f"state {q} is nondeterministic on {sym.display}"
                    )
                if matches:
                    delta[(q, sym.id)] = matches[0].dst
                    outputs[(q, sym.id)] = matches[0].output
        out_values = sorted({t.output for t in self.transitions}) or [Fraction(0)]
        return MealyMachine(
            input_alphabet=alphabet,
            output_alphabet=tuple(out_values),
            n_states=self.n_states,
            delta=delta,
            outputs=outputs,
            initial=self.initial,
        )


def _semantically(g: GuardedMachine, guard: str) -> frozenset[frozenset[str]]:
    return guard_truth_table(guard, g.propositions)


def _single_atom(g: GuardedMachine, guard: str) -> str | None:
    """The proposition p when guard is equivalent to the bare atom p."""
    table = _semantically(g, guard)
    for p in g.propositions:
        if table == _semantically(g, p):
            return p
    return None


def repair_nondeterminism(g: GuardedMachine) -> GuardedMachine:
    """Make the documented overlap pattern deterministic.

    The pattern: a state q1 with guards on two propositions a and b racing
    to distinct states q2 and q3, a q1 self-loop on neither, q2/q3 waiting
    for the other proposition before converging on a common q4. The repair
    re-guards q1's exits to be mutually exclusive and routes the simultaneous
    case through a fresh intermediate state that waits for either proposition.
    Anything else raises UnsupportedPattern.
    """
    machine = g
    for _ in range(g.n_states + 1):
        conflict = _find_conflict(machine)
        if conflict is None:
            return machine
        machine = _repair_one(machine, conflict)
    raise UnsupportedPattern("repair did not converge")


def _find_conflict(g: GuardedMachine) -> int | None:
    for q in range(g.n_states):
        for mask in range(1 << len(g.propositions)):
            subset = frozenset(p for i, p in enumerate(g.propositions) if mask >> i & 1)
            if len(g.matching(q, subset)) > 1:
                return q
    return None


def _repair_one(g: GuardedMachine, q1: int) -> GuardedMachine:
    outgoing = g.transitions_from(q1)
    atoms = [(t, _single_atom(g, t.guard)) for t in outgoing]
    racing = [(t, p) for t, p in atoms if p is not None and t.dst != q1]
    if len(racing) != 2:
        raise UnsupportedPattern(
            f"state {q1}: expected exactly two single-proposition exits"
        )
    (ta, prop_a), (tb, prop_b) = racing
    if prop_a == prop_b or ta.dst == tb.dst:
        raise UnsupportedPattern(f"state {q1}: exits must use distinct propositions")
    q2, q3 = ta.dst, tb.dst
    # the self-loop must wait on exactly "neither proposition"
    loops = [t for t in outgoing if t.dst == q1]
    neither = f"{NOT}{prop_a}{AND}{NOT}{prop_b}"
    if len(loops) != 1 or _semantically(g, loops[0].guard) != _semantically(g, neither):
        raise UnsupportedPattern(f"state {q1}: missing self-loop on neither guard")
    if ta.output != tb.output:
        raise UnsupportedPattern(f"state {q1}: racing exits emit different outputs")
    converge_a = [
        t for t in g.transitions_from(q2)
        if t.dst != q2 and _semantically(g, t.guard) == _semantically(g, prop_b)
    ]
    converge_b = [
        t for t in g.transitions_from(q3)
        if t.dst != q3 and _semantically(g, t.guard) == _semantically(g, prop_a)
    ]
    if len(converge_a) != 1 or len(converge_b) != 1:
        raise UnsupportedPattern(f"state {q1}: successors do not wait for the other")
    if converge_a[0].dst != converge_b[0].dst:
        raise UnsupportedPattern(f"state {q1}: successors converge on different states")
    if converge_a[0].output != converge_b[0].output:
        raise UnsupportedPattern(f"state {q1}: converging edges emit different outputs")
    q4 = converge_a[0].dst
    q5 = g.n_states
    both = f"{prop_a}{AND}{prop_b}"
    either = f"{prop_a}{OR}{prop_b}"
    replaced = []
    for t in g.transitions:
        if t is ta:
            replaced.append(GuardedTransition(q1, f"{prop_a}{AND}{NOT}{prop_b}", q2, t.output))
        elif t is tb:
            replaced.append(GuardedTransition(q1, f"{prop_b}{AND}{NOT}{prop_a}", q3, t.output))
        else:
            replaced.append(t)
    replaced.append(GuardedTransition(q1, both, q5, ta.output))
    replaced.append(GuardedTransition(q5, f"{NOT}({either})", q5, loops[0].output))
    replaced.append(GuardedTransition(q5, either, q4, converge_a[0].output))
    return GuardedMachine(
        propositions=g.propositions,
        n_states=g.n_states + 1,
        transitions=tuple(replaced),
        initial=g.initial,
    )


# --- transition summarization ---------------------------------------------

@dataclass(frozen=True)
class SummarizedEdge:
    src: int
    dst: int
    output: Fraction
    guard: str


def _minterm(subset: frozenset[str], propositions: tuple[str, ...]) -> str:
    lits = [p if p in subset else NOT + p for p in propositions]
    return "(" + AND.join(lits) + ")"


def summarize_transitions(
    m: MealyMachine, propositions: tuple[str, ...]
) -> list[SummarizedEdge]:
    """Merge parallel symbol edges sharing (source, target, output).

    Labels are sums of minterms over the proposition set; duplicate literal
    sets are deduplicated but no further Boolean minimization is attempted.
    """
    groups: dict[tuple[int, int, Fraction], list[frozenset[str]]] = {}
    order: list[tuple[int, int, Fraction]] = []
    for sym in m.input_alphabet:
        subset = parse_proposition_set(sym.display, propositions)
        for q in range(m.n_states):
            key = (q, sym.id)
            if key not in m.delta:
                continue
            group_key = (q, m.delta[key], m.outputs[key])
            if group_key not in groups:
                groups[group_key] = []
                order.append(group_key)
            if subset not in groups[group_key]:
                groups[group_key].append(subset)
    edges = []
    for src, dst, out in sorted(order):
        minterms = [_minterm(s, propositions) for s in groups[(src, dst, out)]]
        edges.append(SummarizedEdge(src, dst, out, OR.join(minterms)))
    return edges


def expand_guard_to_symbols(
    guard: str, propositions: tuple[str, ...], alphabet: tuple[Symbol, ...]
) -> frozenset[int]:
    """Symbol ids of alphabet members whose proposition subsets satisfy the guard."""
    hits = set()
    for sym in alphabet:
        subset = parse_proposition_set(sym.display, propositions)
        if eval_guard(guard, subset, propositions):
            hits.add(sym.id)
    return frozenset(hits)


__all__ = [
    "GuardedMachine",
    "GuardedTransition",
    "SummarizedEdge",
    "eval_guard",
    "expand_guard_to_symbols",
    "guard_truth_table",
    "parse_proposition_set",
    "repair_nondeterminism",
    "subset_alphabet",
    "summarize_transitions",
]
