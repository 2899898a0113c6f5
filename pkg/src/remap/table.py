"""The symbolic observation table: prefixes, suffixes, variable-valued cells.

Cells hold variable identifiers rather than concrete outputs; the matching
constraints live in a `ConstraintStore`. The context maps each distinct
queried sequence (a prefix-suffix concatenation) to its variable, so cells
whose concatenations coincide always share one variable.
"""

from __future__ import annotations

from typing import Iterator

from .automata.machines import Sequence, Symbol, format_sequence, sequence_labels
from .errors import NotUnified, UnknownPrefix

VarId = int


class SymbolicTable:
    """Observation table state for one learning session (single writer)."""

    def __init__(self, input_alphabet: tuple[Symbol, ...]):
        if not input_alphabet:
            raise ValueError("input alphabet must be nonempty")
        self.alphabet = input_alphabet
        self.prefixes: list[Sequence] = [()]
        self.suffixes: list[Sequence] = [()]
        self._prefix_set: set[Sequence] = {()}
        self._suffix_set: set[Sequence] = {()}
        self.cells: dict[tuple[Sequence, Sequence], VarId] = {}
        self.context: dict[Sequence, VarId] = {}
        self._var_counter = 0
        self.unified = False

    def fresh_var(self) -> VarId:
        """Next variable id; ids count up and are never reused."""
        v = self._var_counter
        self._var_counter += 1
        return v

    def row_sequences(self) -> list[Sequence]:
        """S then S·Σ in scan order, without duplicates."""
        seen = set(self.prefixes)
        rows = list(self.prefixes)
        for s in self.prefixes:
            for sym in self.alphabet:
                ext = s + (sym,)
                if ext not in seen:
                    seen.add(ext)
                    rows.append(ext)
        return rows

    def iter_cells(self) -> Iterator[tuple[Sequence, Sequence, Sequence]]:
        """(row, suffix, concatenation) triples in the fixed fill order."""
        for s in self.row_sequences():
            for e in self.suffixes:
                yield s, e, s + e

    def add_prefix(self, s: Sequence) -> None:
        """Add a sequence and its prefixes to S (shortest first)."""
        added = False
        for k in range(1, len(s) + 1):
            p = s[:k]
            if p not in self._prefix_set:
                self._prefix_set.add(p)
                self.prefixes.append(p)
                added = True
        if added:
            self.unified = False

    def add_suffix(self, e: Sequence) -> None:
        """Add a sequence and its suffixes to E (shortest first)."""
        added = False
        for k in range(len(e) - 1, -1, -1):
            p = e[k:]
            if p not in self._suffix_set:
                self._suffix_set.add(p)
                self.suffixes.append(p)
                added = True
        if added:
            self.unified = False

    def row(self, s: Sequence) -> tuple[VarId, ...]:
        """Cell variables of a row, ordered by the suffix list."""
        if s not in self._prefix_set and not (
            s and s[:-1] in self._prefix_set
        ):
            raise UnknownPrefix(f"{format_sequence(s)} is outside S and S·Σ")
        try:
            return tuple(self.cells[(s, e)] for e in self.suffixes)
        except KeyError:
            raise NotUnified(
                f"row {format_sequence(s)} has unfilled cells; run a symbolic fill"
            ) from None

    def rows_of_prefixes(self) -> dict[tuple[VarId, ...], Sequence]:
        """First prefix in S exhibiting each distinct row."""
        out: dict[tuple[VarId, ...], Sequence] = {}
        for s in self.prefixes:
            r = self.row(s)
            if r not in out:
                out[r] = s
        return out

    def _require_unified(self):
        if not self.unified:
            raise NotUnified("table must be filled and unified before checks")

    def is_closed(self) -> tuple[bool, tuple[Sequence, Symbol] | None]:
        """Every successor row must appear among prefix rows.

        The witness, when closure fails, is the first (s, symbol) pair in
        scan order: S insertion order, then alphabet order.
        """
        self._require_unified()
        prefix_rows = {self.row(s) for s in self.prefixes}
        for s in self.prefixes:
            for sym in self.alphabet:
                if self.row(s + (sym,)) not in prefix_rows:
                    return False, (s, sym)
        return True, None

    def is_consistent(
        self,
    ) -> tuple[bool, tuple[Sequence, Sequence, Symbol, Sequence] | None]:
        """Equal rows must have equal successor rows, suffix by suffix.

        The witness is the first (s1, s2, symbol, suffix) in scan order with
        matching rows but differing successor cells.
        """
        self._require_unified()
        for i, s1 in enumerate(self.prefixes):
            row1 = self.row(s1)
            for s2 in self.prefixes[i + 1 :]:
                if self.row(s2) != row1:
                    continue
                for sym in self.alphabet:
                    for e in self.suffixes:
                        if self.cells[(s1 + (sym,), e)] != self.cells[(s2 + (sym,), e)]:
                            return False, (s1, s2, sym, e)
        return True, None

    def snapshot(self, constraints: list[str] | None = None) -> dict:
        """JSON-ready view of the table for traces and the teaching UI."""
        rows = []
        for s in self.row_sequences():
            cells = [
                f"v{self.cells[(s, e)]}" if (s, e) in self.cells else None
                for e in self.suffixes
            ]
            rows.append(
                {
                    "prefix": sequence_labels(s),
                    "in_s": s in self._prefix_set,
                    "cells": cells,
                }
            )
        return {
            "prefixes": [sequence_labels(s) for s in self.prefixes],
            "suffixes": [sequence_labels(e) for e in self.suffixes],
            "rows": rows,
            "constraints": list(constraints or []),
        }
