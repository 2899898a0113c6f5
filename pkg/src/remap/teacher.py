"""Teachers: preference answers plus exact or sampling equivalence checks.

Simulated teachers answer from a ground-truth Moore machine and are pure
functions of their seed, so sessions replay exactly. The exact equivalence
query searches the product machine breadth-first and returns the
length-lexicographically smallest counterexample; the sampling variant
draws up to `pac_samples` random sequences with geometric lengths.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .automata.machines import MooreMachine, Sequence, alphabets_match, sequence_labels
from .errors import AlphabetMismatch, BadConfig


@dataclass(frozen=True)
class CounterexampleFeedback:
    """A rejected hypothesis: the witness sequence and its true value."""

    sequence: Sequence
    value: Fraction


@dataclass(frozen=True)
class TeacherConfig:
    ground_truth: MooreMachine
    mode: Literal["exact", "pac"] = "exact"
    pac_samples: int | None = None
    length_stop_prob: float = 0.2
    rng_seed: int = 0

    def __post_init__(self):
        if self.mode == "pac":
            if self.pac_samples is None or self.pac_samples < 0:
                raise BadConfig("pac mode requires a nonnegative sample count")
            if not 0 < self.length_stop_prob <= 1:
                raise BadConfig("length stop probability must be in (0, 1]")
        elif self.mode != "exact":
            raise BadConfig(f"unknown teacher mode {self.mode!r}")


def derive_seed(base_seed: int, trial: int, role: str) -> int:
    """Stable 64-bit seed split: hash of (base seed, trial index, role tag)."""
    digest = hashlib.sha256(f"{base_seed}:{trial}:{role}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def find_counterexample(
    hypothesis: MooreMachine, truth: MooreMachine
) -> CounterexampleFeedback | None:
    """Shortest (then lexicographically first) disagreement, or None.

    Breadth-first search over the product machine with symbols in alphabet
    order; the first disagreeing state pair discovered is reached by the
    length-lexicographically smallest disagreeing sequence.
    """
    if not alphabets_match(hypothesis.input_alphabet, truth.input_alphabet):
        raise AlphabetMismatch("hypothesis and ground truth alphabets differ")
    start = (hypothesis.initial, truth.initial)
    if hypothesis.labels[start[0]] != truth.labels[start[1]]:
        return CounterexampleFeedback((), truth.labels[start[1]])
    visited = {start}
    queue: list[tuple[tuple[int, int], Sequence]] = [(start, ())]
    head = 0
    while head < len(queue):
        (hq, tq), seq = queue[head]
        head += 1
        for sym in truth.input_alphabet:
            pair = (hypothesis.delta[hq][sym.id], truth.delta[tq][sym.id])
            if pair in visited:
                continue
            ext = seq + (sym,)
            if hypothesis.labels[pair[0]] != truth.labels[pair[1]]:
                return CounterexampleFeedback(ext, truth.labels[pair[1]])
            visited.add(pair)
            queue.append((pair, ext))
    return None


def sample_sequence(
    alphabet, rng: random.Random, stop_prob: float
) -> Sequence:
    """Geometric-length sequence (length 0 with probability stop_prob),
    elements uniform over the alphabet."""
    length = 0
    while rng.random() >= stop_prob:
        length += 1
    return tuple(alphabet[rng.randrange(len(alphabet))] for _ in range(length))


class SimulatedTeacher:
    """Oracle backed by a ground-truth machine.

    Ground-truth evaluations are memoized per sequence, and every query is
    appended to `transcript` so interactive replays can be checked against
    in-process runs.
    """

    def __init__(self, config: TeacherConfig):
        self.config = config
        self.truth = config.ground_truth
        self._rng = random.Random(config.rng_seed)
        self._cache: dict[Sequence, Fraction] = {}
        self.transcript: list[tuple] = []

    def value_of(self, seq: Sequence) -> Fraction:
        if seq not in self._cache:
            self._cache[seq] = self.truth.run(seq)
        return self._cache[seq]

    def pref_query(self, s1: Sequence, s2: Sequence) -> int:
        """0 when f(s1) = f(s2); -1 when f(s1) < f(s2); +1 otherwise."""
        self.transcript.append(("pref", sequence_labels(s1), sequence_labels(s2)))
        v1, v2 = self.value_of(s1), self.value_of(s2)
        if v1 == v2:
            return 0
        return -1 if v1 < v2 else 1

    def equivalence_query(
        self, hypothesis: MooreMachine
    ) -> CounterexampleFeedback | None:
        self.transcript.append(("eq", hypothesis.n_states))
        if self.config.mode == "exact":
            return find_counterexample(hypothesis, self.truth)
        if not alphabets_match(hypothesis.input_alphabet, self.truth.input_alphabet):
            raise AlphabetMismatch("hypothesis and ground truth alphabets differ")
        for _ in range(self.config.pac_samples):
            seq = sample_sequence(
                self.truth.input_alphabet, self._rng, self.config.length_stop_prob
            )
            expected = self.value_of(seq)
            if hypothesis.run(seq) != expected:
                return CounterexampleFeedback(seq, expected)
        return None


@dataclass
class MembershipOracle:
    """Concrete-value oracle for the classic-L*-style baseline."""

    truth: MooreMachine
    queries: int = 0
    _cache: dict[Sequence, Fraction] = field(default_factory=dict)

    def __call__(self, seq: Sequence) -> Fraction:
        if seq not in self._cache:
            self.queries += 1
            self._cache[seq] = self.truth.run(seq)
        return self._cache[seq]
