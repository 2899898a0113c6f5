"""Interactive learning sessions: a learner task fed by human answers.

Each session runs the learning loop in its own thread with a teacher that
publishes one pending question at a time and blocks until an answer arrives.
Answers are consumed exactly once: the pending question is cleared the
moment a matching answer is accepted, and anything referencing another
question id is rejected.
"""

from __future__ import annotations

import itertools
import queue
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .automata.io import machine_to_dict
from .automata.machines import (
    MooreMachine,
    Sequence,
    Symbol,
    make_alphabet,
    make_output_alphabet,
    parse_sequence,
    sequence_labels,
)
from .constraints import ConstraintStore
from .errors import (
    BadConfig,
    InconsistentTeacher,
    InvalidAnswer,
    SessionClosed,
    UnknownSymbol,
    WrongQuestionId,
)
from .learner import RemapResult, RunStats, TerminationTrace, remap
from .table import SymbolicTable
from .teacher import CounterexampleFeedback

_CLOSE = object()


@dataclass
class PendingQuestion:
    id: int
    kind: str  # preference | equivalence
    payload: dict

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "payload": self.payload}


@dataclass
class Session:
    """One learner task plus its answer channel and published snapshots."""

    id: str
    input_alphabet: tuple[Symbol, ...]
    output_alphabet: tuple[Fraction, ...]
    status: str = "running"  # running | waiting | done | closed | error
    pending: PendingQuestion | None = None
    result: RemapResult | None = None
    error: str | None = None
    _cached_snapshot: dict | None = None
    _table: SymbolicTable | None = None
    _store: ConstraintStore | None = None
    _trace: TerminationTrace | None = None
    _stats: RunStats | None = None
    _answers: "queue.Queue[Any]" = field(default_factory=queue.Queue)
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _question_counter: "itertools.count[int]" = field(default_factory=itertools.count)
    _thread: threading.Thread | None = None

    # -- teacher side (learner thread) --------------------------------

    def _ask(self, kind: str, payload: dict):
        with self._lock:
            if self.status == "closed":
                raise SessionClosed("session was closed")
            self.pending = PendingQuestion(next(self._question_counter), kind, payload)
            self.status = "waiting"
        answer = self._answers.get()
        if answer is _CLOSE:
            raise SessionClosed("session closed while waiting for an answer")
        return answer

    def pref_query(self, s1: Sequence, s2: Sequence) -> int:
        return self._ask(
            "preference",
            {"s1": sequence_labels(s1), "s2": sequence_labels(s2)},
        )

    def equivalence_query(self, hypothesis: MooreMachine) -> CounterexampleFeedback | None:
        answer = self._ask("equivalence", {"machine": machine_to_dict(hypothesis)})
        if answer == "correct":
            return None
        seq, value = answer
        return CounterexampleFeedback(seq, value)

    # -- API side ------------------------------------------------------

    def post_answer(self, question_id: int, kind: str, answer) -> None:
        """Validate and deliver one answer for the pending question."""
        with self._lock:
            if self.status in ("done", "error"):
                raise WrongQuestionId("session already finished")
            if self.status == "closed":
                raise SessionClosed("session was closed")
            if self.pending is None or self.pending.id != question_id:
                raise WrongQuestionId(f"question {question_id} is not pending")
            if kind != self.pending.kind:
                raise InvalidAnswer(
                    f"pending question is a {self.pending.kind} query, got {kind!r}"
                )
            validated = self._validate(kind, answer)
            # flip to running before the learner wakes so state() never
            # reads the table while it is being mutated
            self.pending = None
            self.status = "running"
        self._answers.put(validated)

    def _validate(self, kind: str, answer):
        if kind == "preference":
            if answer not in (-1, 0, 1) or isinstance(answer, bool):
                raise InvalidAnswer(f"preference answer must be -1, 0 or +1, got {answer!r}")
            return answer
        if answer == "correct":
            return "correct"
        if not isinstance(answer, dict) or set(answer) != {"sequence", "value"}:
            raise InvalidAnswer(
                "equivalence answer must be 'correct' or {sequence, value}"
            )
        try:
            seq = parse_sequence(self.input_alphabet, answer["sequence"])
        except UnknownSymbol as exc:
            raise InvalidAnswer(str(exc)) from exc
        try:
            value = Fraction(str(answer["value"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidAnswer(f"bad output value {answer['value']!r}") from exc
        if value not in self.output_alphabet:
            raise InvalidAnswer(
                f"value {value} not in the output alphabet"
            )
        return (seq, value)

    def close(self) -> None:
        with self._lock:
            if self.status in ("done", "error", "closed"):
                return
            self.status = "closed"
            self.pending = None
        self._answers.put(_CLOSE)

    # -- lifecycle -------------------------------------------------------

    def _observe(
        self,
        table: SymbolicTable,
        store: ConstraintStore,
        trace: TerminationTrace,
        stats: RunStats,
    ) -> None:
        snap = self._build_snapshot(table, store, trace, stats)
        with self._lock:
            self._table, self._store = table, store
            self._trace, self._stats = trace, stats
            self._cached_snapshot = snap

    @staticmethod
    def _build_snapshot(
        table: SymbolicTable,
        store: ConstraintStore,
        trace: TerminationTrace,
        stats: RunStats,
    ) -> dict:
        snap = table.snapshot(store.dump())
        snap["trace"] = [
            {"kind": e.kind, "n_states": e.n_states, "n_known": e.n_known}
            for e in trace.events
        ]
        snap["stats"] = {
            "pref_queries": stats.pref_queries,
            "eq_queries": stats.eq_queries,
            "unique_sequences": stats.unique_sequences,
        }
        return snap

    def _run(self) -> None:
        try:
            result = remap(
                self.input_alphabet, self.output_alphabet, self, observer=self._observe
            )
            with self._lock:
                self.result = result
                self.status = "done"
        except SessionClosed:
            with self._lock:
                self.status = "closed"
        except InconsistentTeacher as exc:
            with self._lock:
                self.status = "error"
                self.error = str(exc)

    def start(self) -> None:
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()

    def wait_for_question(self, timeout: float = 5.0) -> None:
        """Block until a question is pending or the session settles."""
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            with self._lock:
                if self.pending is not None or self.status in ("done", "error", "closed"):
                    return
            time.sleep(0.005)

    def pending_view(self) -> tuple[str, dict | None]:
        with self._lock:
            return self.status, self.pending.to_dict() if self.pending else None

    def final_machine_dict(self) -> dict | None:
        with self._lock:
            return machine_to_dict(self.result.machine) if self.result else None

    def state(self) -> dict:
        with self._lock:
            # rebuild the snapshot only while the learner is parked
            # (waiting on an answer) or has finished; otherwise serve the
            # one published at the last observer call
            snapshot = self._cached_snapshot
            if self.status in ("waiting", "done", "error") and self._table is not None:
                snapshot = self._build_snapshot(
                    self._table, self._store, self._trace, self._stats
                )
            out = {
                "status": self.status,
                "pending": self.pending.to_dict() if self.pending else None,
                "table": snapshot,
                "machine": machine_to_dict(self.result.machine) if self.result else None,
                "error": self.error,
            }
            if self.result:
                out["stats"] = {
                    "pref_queries": self.result.stats.pref_queries,
                    "eq_queries": self.result.stats.eq_queries,
                    "unique_sequences": self.result.stats.unique_sequences,
                }
                out["trace"] = [
                    {"kind": e.kind, "n_states": e.n_states, "n_known": e.n_known}
                    for e in self.result.trace.events
                ]
            return out


class SessionManager:
    """Registry of live sessions keyed by id."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._counter = itertools.count(1)
        self._lock = threading.Lock()

    def create(self, input_labels: list[str], output_values: list[str]) -> Session:
        if not input_labels:
            raise BadConfig("input alphabet must be nonempty")
        if not output_values:
            raise BadConfig("output alphabet must be nonempty")
        try:
            alphabet = make_alphabet(input_labels)
            out_alpha = make_output_alphabet(output_values)
        except (ValueError, ZeroDivisionError) as exc:
            raise BadConfig(str(exc)) from exc
        with self._lock:
            sid = f"s{next(self._counter)}"
            session = Session(sid, alphabet, out_alpha)
            self._sessions[sid] = session
        session.start()
        session.wait_for_question()
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def close_all(self) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
        for s in sessions:
            s.close()
