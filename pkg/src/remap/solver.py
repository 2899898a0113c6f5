"""Assign output values to representatives subject to the constraint store.

After full pairwise preference querying the representatives form a chain, so
the search is effectively linear; backtracking covers partially ordered
stores (e.g. mid-session or under sparse direct use). Values are tried in
ascending domain order along a topological order of the inequality graph, so
the returned assignment is the lexicographically least satisfying one and
the result is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .constraints import ConstraintStore
from .errors import CyclicOrder, Unsatisfiable
from .table import VarId

Solution = dict[VarId, Fraction]


def _topological(reps: list[VarId], edges: set[tuple[VarId, VarId]]) -> list[VarId]:
    preds: dict[VarId, set[VarId]] = {r: set() for r in reps}
    succs: dict[VarId, set[VarId]] = {r: set() for r in reps}
    for lesser, greater in edges:
        preds[greater].add(lesser)
        succs[lesser].add(greater)
    order = []
    ready = sorted(r for r in reps if not preds[r])
    remaining = {r: set(p) for r, p in preds.items()}
    while ready:
        node = ready.pop(0)
        order.append(node)
        newly = []
        for nxt in succs[node]:
            remaining[nxt].discard(node)
            if not remaining[nxt]:
                newly.append(nxt)
        ready = sorted(ready + newly)
    if len(order) != len(reps):
        cyclic = sorted(set(reps) - set(order))
        raise CyclicOrder(f"inequalities cycle through {['v%d' % r for r in cyclic]}")
    return order


def solve(
    store: ConstraintStore,
    reps: list[VarId],
    domain: tuple[Fraction, ...],
) -> Solution:
    """Lexicographically least satisfying assignment over `domain`.

    Bound representatives keep their bound values; unbound ones take the
    least feasible domain value. Raises Unsatisfiable when no assignment
    exists (inconsistent teacher, or more representatives than values) and
    CyclicOrder when the inequality graph is not acyclic.
    """
    if not domain:
        raise Unsatisfiable("empty output domain")
    domain = tuple(sorted(Fraction(v) for v in domain))
    rep_set = set(reps)
    edges = {
        (a, b) for a, b in store.inequalities if a in rep_set and b in rep_set
    }
    order = _topological(sorted(rep_set), edges)
    preds: dict[VarId, list[VarId]] = {r: [] for r in order}
    for lesser, greater in edges:
        preds[greater].append(lesser)

    assignment: Solution = {}

    def candidates(r: VarId):
        bound = store.values.get(r)
        floor = max((assignment[p] for p in preds[r]), default=None)
        for value in domain if bound is None else (bound,):
            if bound is not None and value not in domain:
                return
            if floor is None or value > floor:
                yield value

    def search(i: int) -> bool:
        if i == len(order):
            return True
        r = order[i]
        for value in candidates(r):
            assignment[r] = value
            if search(i + 1):
                return True
            del assignment[r]
        return False

    if not search(0):
        raise Unsatisfiable(
            f"no assignment of {len(order)} representatives into {len(domain)} values"
        )
    return assignment
