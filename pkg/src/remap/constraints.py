"""Constraint store: equalities, strict inequalities, value bindings.

Equalities queue up and are drained by `unify`, which maintains union-find
equivalence classes with a deterministically elected representative (the
lowest-numbered variable in the class, so representatives stay stable as
classes merge). Inequalities are rewritten onto representatives and stored
normalized as (lesser, greater) pairs; value bindings attach to
representatives and survive merges.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import CyclicOrder, ValueConflict
from .table import SymbolicTable, VarId


class ConstraintStore:
    """Single-session constraint state; one writer, snapshot reads."""

    def __init__(self):
        self.equalities: deque[tuple[VarId, VarId]] = deque()
        self.inequalities: set[tuple[VarId, VarId]] = set()  # (lesser, greater)
        self.values: dict[VarId, Fraction] = {}  # keyed by representative
        self._parent: dict[VarId, VarId] = {}
        self._rep: dict[VarId, VarId] = {}  # union-find root -> elected rep

    def register(self, v: VarId) -> None:
        """Track a freshly created variable as its own singleton class."""
        if v not in self._parent:
            self._parent[v] = v
            self._rep[v] = v

    def _find(self, v: VarId) -> VarId:
        self.register(v)
        root = v
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[v] != root:  # path compression
            self._parent[v], v = root, self._parent[v]
        return root

    def rep(self, v: VarId) -> VarId:
        """The elected representative of v's equivalence class."""
        return self._rep[self._find(v)]

    def record_preference(self, v1: VarId, v2: VarId, p: int) -> None:
        """Fold a preference answer into the store.

        p = 0 queues an equality; p = -1 records v1 < v2; p = +1 records
        v2 < v1. Conflicts only surface later, in unify or solve.
        """
        self.register(v1)
        self.register(v2)
        if p == 0:
            if v1 != v2:
                self.equalities.append((v1, v2))
        elif p == -1:
            self.inequalities.add((v1, v2))
        elif p == 1:
            self.inequalities.add((v2, v1))
        else:
            raise ValueError(f"preference must be -1, 0 or +1, got {p!r}")

    def bind_value(self, v: VarId, value: Fraction) -> None:
        """Attach a known output value to v's class representative."""
        value = Fraction(value)
        r = self.rep(v)
        current = self.values.get(r)
        if current is not None and current != value:
            raise ValueConflict(f"v{r} already bound to {current}, got {value}")
        self.values[r] = value

    def _union(self, a: VarId, b: VarId) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return
        rep_a, rep_b = self._rep[ra], self._rep[rb]
        val_a, val_b = self.values.get(rep_a), self.values.get(rep_b)
        if val_a is not None and val_b is not None and val_a != val_b:
            raise ValueConflict(
                f"merging v{rep_a}={val_a} with v{rep_b}={val_b}"
            )
        self._parent[rb] = ra
        elected = min(rep_a, rep_b)
        self._rep[ra] = elected
        merged = val_a if val_a is not None else val_b
        self.values.pop(rep_a, None)
        self.values.pop(rep_b, None)
        if merged is not None:
            self.values[elected] = merged

    def unify(self, table: SymbolicTable) -> None:
        """Drain equalities, rewrite constraints and table onto representatives.

        Raises ValueConflict when two classes with different bound values
        merge, and CyclicOrder when rewriting turns an inequality into r < r.
        """
        while self.equalities:
            a, b = self.equalities.popleft()
            self._union(a, b)
        rewritten = set()
        for lesser, greater in self.inequalities:
            rl, rg = self.rep(lesser), self.rep(greater)
            if rl == rg:
                raise CyclicOrder(f"v{rl} < v{rg} after substitution")
            rewritten.add((rl, rg))
        self.inequalities = rewritten
        for key, var in table.cells.items():
            table.cells[key] = self.rep(var)
        for seq, var in table.context.items():
            table.context[seq] = self.rep(var)
        table.unified = all(
            (s, e) in table.cells for s, e, _seq in table.iter_cells()
        )

    def representatives(self) -> list[VarId]:
        """All class representatives, ordered by creation index."""
        return sorted({self._rep[self._find(v)] for v in self._parent})

    def dump(self) -> list[str]:
        """One constraint per line, representatives named v<k>."""
        lines = [f"v{a} < v{b}" for a, b in sorted(self.inequalities)]
        lines += [f"v{r} = {val}" for r, val in sorted(self.values.items())]
        return lines
