"""Experiment harness: evaluation sets, accuracy, trial grids, scaling checks.

Emits data files only (CSV rows per trial, JSONL traces); plotting is out of
scope. Randomness flows from a single base seed through `derive_seed`
(base, trial index, role tag), so grids are reproducible without storing
per-trial seeds.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .automata.machines import MooreMachine, Sequence, Symbol, alphabets_match
from .automata.transform import isomorphic, minimize
from .errors import AlphabetMismatch
from .learner import TerminationTrace, remap
from .teacher import SimulatedTeacher, TeacherConfig, derive_seed, sample_sequence

PATH_ENUMERATION_CAP = 10_000


@dataclass
class EvalReport:
    """One learning trial: accuracy plus query accounting."""

    target: str
    samples_per_eq: int | None
    seed: int
    accuracy: float
    isomorphic: bool
    pref_queries: int
    eq_queries: int
    unique_sequences: int
    max_counterexample_len: int
    target_states: int
    alphabet_size: int
    trace: TerminationTrace


def gen_eval_set(
    truth: MooreMachine,
    n_random: int,
    seed: int,
    stop_prob: float = 0.2,
    path_cap: int = PATH_ENUMERATION_CAP,
) -> list[Sequence]:
    """Random geometric-length sequences plus all short symbol paths.

    The enumerated part covers every path of length up to the state count
    (capped at `path_cap` sequences for wide alphabets). Returned sorted by
    length then symbol ids, deduplicated, so the same seed always yields the
    same list.
    """
    rng = random.Random(seed)
    found: dict[Sequence, None] = {}
    current: list[Sequence] = [()]
    found[()] = None
    depth = truth.n_states
    for _ in range(depth):
        if len(found) >= path_cap:
            break
        nxt = []
        for seq in current:
            for sym in truth.input_alphabet:
                ext = seq + (sym,)
                if ext not in found:
                    found[ext] = None
                    nxt.append(ext)
                if len(found) >= path_cap:
                    break
            if len(found) >= path_cap:
                break
        current = nxt
    for _ in range(n_random):
        found.setdefault(
            sample_sequence(truth.input_alphabet, rng, stop_prob), None
        )
    return sorted(found, key=lambda s: (len(s), tuple(sym.id for sym in s)))


def accuracy(
    truth: MooreMachine, learned: MooreMachine, eval_set: list[Sequence]
) -> float:
    """Fraction of the evaluation set classified identically."""
    if not alphabets_match(truth.input_alphabet, learned.input_alphabet):
        raise AlphabetMismatch("accuracy requires shared input alphabets")
    if not eval_set:
        raise ValueError("empty evaluation set")
    agree = sum(1 for s in eval_set if truth.run(s) == learned.run(s))
    return agree / len(eval_set)


def run_trial(
    truth: MooreMachine,
    target_name: str,
    samples_per_eq: int | None,
    base_seed: int,
    trial: int,
    eval_random: int = 200,
    stop_prob: float = 0.2,
) -> EvalReport:
    """One learning session against `truth` plus its evaluation."""
    teacher_seed = derive_seed(base_seed, trial, f"teacher/{target_name}/{samples_per_eq}")
    if samples_per_eq is None:
        cfg = TeacherConfig(ground_truth=truth, mode="exact")
    else:
        cfg = TeacherConfig(
            ground_truth=truth,
            mode="pac",
            pac_samples=samples_per_eq,
            length_stop_prob=stop_prob,
            rng_seed=teacher_seed,
        )
    teacher = SimulatedTeacher(cfg)
    result = remap(truth.input_alphabet, truth.output_alphabet, teacher)
    eval_seed = derive_seed(base_seed, trial, f"eval/{target_name}/{samples_per_eq}")
    eval_set = gen_eval_set(truth, eval_random, eval_seed, stop_prob)
    iso = isomorphic(result.machine, truth)
    acc = accuracy(truth, result.machine, eval_set)
    if iso and acc != 1.0:
        raise AssertionError("isomorphic machines must agree everywhere")
    return EvalReport(
        target=target_name,
        samples_per_eq=samples_per_eq,
        seed=trial,
        accuracy=acc,
        isomorphic=iso,
        pref_queries=result.stats.pref_queries,
        eq_queries=result.stats.eq_queries,
        unique_sequences=result.stats.unique_sequences,
        max_counterexample_len=result.stats.max_counterexample_len,
        target_states=minimize(truth).n_states,
        alphabet_size=len(truth.input_alphabet),
        trace=result.trace,
    )


def isomorphism_probability(
    truth: MooreMachine,
    target_name: str,
    samples_grid: list[int | None],
    trials: int,
    base_seed: int,
    stop_prob: float = 0.2,
) -> tuple[dict[int | None, float], list[EvalReport]]:
    """Fraction of trials isomorphic to the truth, per samples-per-EQ setting."""
    if trials < 1:
        raise ValueError("trials must be positive")
    reports = []
    fractions: dict[int | None, float] = {}
    for samples in samples_grid:
        hits = 0
        for trial in range(trials):
            report = run_trial(truth, target_name, samples, base_seed, trial, stop_prob=stop_prob)
            reports.append(report)
            hits += report.isomorphic
        fractions[samples] = hits / trials
    return fractions, reports


@dataclass(frozen=True)
class ScalingRecord:
    unique_sequences: int
    pref_queries: int
    alphabet_size: int
    target_states: int
    max_counterexample_len: int


def scaling_stats(reports: list[EvalReport]) -> list[ScalingRecord]:
    """Per-report scaling pairs; enforces the exact pairwise-query law."""
    records = []
    for r in reports:
        expected = math.comb(r.unique_sequences, 2)
        if r.pref_queries != expected:
            raise AssertionError(
                f"{r.target}: {r.pref_queries} preference queries for "
                f"{r.unique_sequences} sequences, expected {expected}"
            )
        records.append(
            ScalingRecord(
                unique_sequences=r.unique_sequences,
                pref_queries=r.pref_queries,
                alphabet_size=r.alphabet_size,
                target_states=r.target_states,
                max_counterexample_len=r.max_counterexample_len,
            )
        )
    return records


@dataclass(frozen=True)
class ScalingAggregate:
    count: int
    mean_unique_sequences: float
    max_unique_sequences: int
    mean_pref_queries: float


def aggregate_scaling(
    records: list[ScalingRecord],
) -> dict[str, dict[int, ScalingAggregate]]:
    """Scaling records grouped along each axis of interest."""
    out: dict[str, dict[int, ScalingAggregate]] = {}
    for axis in ("alphabet_size", "target_states", "max_counterexample_len"):
        groups: dict[int, list[ScalingRecord]] = {}
        for record in records:
            groups.setdefault(getattr(record, axis), []).append(record)
        out[axis] = {
            key: ScalingAggregate(
                count=len(group),
                mean_unique_sequences=sum(r.unique_sequences for r in group) / len(group),
                max_unique_sequences=max(r.unique_sequences for r in group),
                mean_pref_queries=sum(r.pref_queries for r in group) / len(group),
            )
            for key, group in sorted(groups.items())
        }
    return out


CSV_FIELDS = [
    "target",
    "samples_per_eq",
    "seed",
    "accuracy",
    "isomorphic",
    "pref_queries",
    "eq_queries",
    "unique_sequences",
]


def reports_to_csv(reports: list[EvalReport]) -> str:
    """Deterministic CSV text for a batch of trial reports."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(
            {
                "target": r.target,
                "samples_per_eq": "" if r.samples_per_eq is None else r.samples_per_eq,
                "seed": r.seed,
                "accuracy": f"{r.accuracy:.6f}",
                "isomorphic": int(r.isomorphic),
                "pref_queries": r.pref_queries,
                "eq_queries": r.eq_queries,
                "unique_sequences": r.unique_sequences,
            }
        )
    return buf.getvalue()


def write_reports(reports: list[EvalReport], out_dir: str | Path) -> Path:
    """Write results.csv plus one trace JSONL per trial under `out_dir`."""
    out = Path(out_dir)
    traces = out / "traces"
    traces.mkdir(parents=True, exist_ok=True)
    csv_path = out / "results.csv"
    csv_path.write_text(reports_to_csv(reports), encoding="utf-8")
    for r in reports:
        name = f"{r.target}.s{r.samples_per_eq or 'exact'}.t{r.seed}.jsonl"
        r.trace.save(traces / name)
    return csv_path


def random_moore(
    rng: random.Random,
    n_states: int,
    input_alphabet: tuple[Symbol, ...],
    output_alphabet: tuple[Fraction, ...],
) -> MooreMachine:
    """Random complete machine with uniformly chosen transitions and labels."""
    delta = tuple(
        tuple(rng.randrange(n_states) for _ in input_alphabet)
        for _ in range(n_states)
    )
    labels = [rng.choice(output_alphabet) for _ in range(n_states)]
    return MooreMachine(
        input_alphabet=input_alphabet,
        output_alphabet=output_alphabet,
        delta=delta,
        labels=tuple(labels),
    )
