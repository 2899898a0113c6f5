"""Command-line entry point: learn, baseline, experiment, convert, serve."""

from __future__ import annotations

import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

import click

from .automata.guards import GuardedMachine, repair_nondeterminism, summarize_transitions
from .automata.io import load_machine, save_machine
from .automata.machines import MealyMachine, MooreMachine
from .automata.transform import (
    complete_with_halt,
    mealy_to_moore,
    moore_to_mealy,
    remove_halt_states,
)
from .errors import InconsistentTeacher, RemapError
from .harness import run_trial, write_reports
from .learner import remap
from .lstar import lstar_baseline
from .teacher import MembershipOracle, SimulatedTeacher, TeacherConfig, derive_seed


def _setup_logging() -> None:
    level = os.environ.get("REMAP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def _load_moore(path: str) -> MooreMachine:
    try:
        machine = load_machine(path)
    except RemapError as exc:
        raise click.ClickException(str(exc)) from exc
    if not isinstance(machine, MooreMachine):
        raise click.ClickException(
            f"{path}: expected a moore machine, got {machine.__class__.__name__}"
        )
    return machine


@click.group()
def main():
    """Learn reward machines from preference and equivalence queries."""
    _setup_logging()


@main.command()
@click.option("--target", required=True, type=click.Path(exists=True), help="ground-truth machine file")
@click.option("--teacher", "mode", type=click.Choice(["exact", "pac"]), default="exact")
@click.option("--samples", type=int, default=None, help="samples per equivalence query (pac)")
@click.option("--stop-prob", type=float, default=0.2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(), help="output directory")
def learn(target, mode, samples, stop_prob, seed, out):
    """Run one learning session and write machine.json plus trace.jsonl."""
    truth = _load_moore(target)
    if mode == "pac":
        if samples is None:
            raise click.ClickException("pac teacher requires --samples")
        cfg = TeacherConfig(
            ground_truth=truth,
            mode="pac",
            pac_samples=samples,
            length_stop_prob=stop_prob,
            rng_seed=derive_seed(seed, 0, "teacher/learn"),
        )
    else:
        cfg = TeacherConfig(ground_truth=truth, mode="exact")
    try:
        result = remap(truth.input_alphabet, truth.output_alphabet, SimulatedTeacher(cfg))
    except InconsistentTeacher as exc:
        raise click.ClickException(str(exc)) from exc
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_machine(result.machine, out_dir / "machine.json")
    result.trace.save(out_dir / "trace.jsonl")
    click.echo(
        f"learned {result.machine.n_states} states in {result.stats.eq_queries} "
        f"equivalence queries, {result.stats.pref_queries} preference queries"
    )


@main.command()
@click.option("--target", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def baseline(target, out):
    """Run the membership-query baseline learner with exact oracles."""
    truth = _load_moore(target)
    membership = MembershipOracle(truth)
    teacher = SimulatedTeacher(TeacherConfig(ground_truth=truth, mode="exact"))
    machine = lstar_baseline(
        truth.input_alphabet, truth.output_alphabet, membership, teacher.equivalence_query
    )
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_machine(machine, out_dir / "machine.json")
    click.echo(
        f"baseline learned {machine.n_states} states with {membership.queries} membership queries"
    )


@main.command()
@click.option("--target", required=True, type=click.Path(exists=True))
@click.option("--samples", required=True, help="comma-separated samples-per-EQ grid, e.g. 10,50,200")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--stop-prob", type=float, default=0.2, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="parallel trial workers")
@click.option("--out", required=True, type=click.Path())
def experiment(target, samples, trials, seed, stop_prob, jobs, out):
    """Isomorphism-probability grid; writes results.csv and per-trial traces."""
    truth = _load_moore(target)
    grid = [int(s) for s in samples.split(",") if s.strip()]
    if not grid or trials < 1:
        raise click.ClickException("need a nonempty samples grid and positive trials")
    name = Path(target).stem
    jobs = max(1, jobs)
    tasks = [(r, t) for r in grid for t in range(trials)]
    if jobs == 1:
        reports = [
            run_trial(truth, name, r, seed, t, stop_prob=stop_prob) for r, t in tasks
        ]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(run_trial, truth, name, r, seed, t, stop_prob=stop_prob)
                for r, t in tasks
            ]
            reports = [f.result() for f in futures]  # merged in task order
    csv_path = write_reports(reports, out)
    for r in grid:
        frac = sum(x.isomorphic for x in reports if x.samples_per_eq == r) / trials
        click.echo(f"samples={r}: isomorphic fraction {frac:.3f}")
    click.echo(f"wrote {csv_path}")


_CONVERT_OPS = ["halt", "strip-halt", "moore2mealy", "mealy2moore", "repair", "summarize"]


@main.command()
@click.option("--op", required=True, type=click.Choice(_CONVERT_OPS))
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--halt-output", default="0", show_default=True, help="output value for halt transitions")
@click.option("--initial-label", default=None, help="label of the initial state for mealy2moore")
def convert(op, in_path, out_path, halt_output, initial_label):
    """Apply a machine transformation to a machine file."""
    try:
        machine = load_machine(in_path)
    except RemapError as exc:
        raise click.ClickException(str(exc)) from exc
    try:
        if op == "halt":
            _expect(machine, MealyMachine, op)
            result = complete_with_halt(machine, Fraction(halt_output))
        elif op == "strip-halt":
            _expect(machine, MealyMachine, op)
            result = remove_halt_states(machine, Fraction(halt_output))
        elif op == "moore2mealy":
            _expect(machine, MooreMachine, op)
            result = moore_to_mealy(machine)
        elif op == "mealy2moore":
            _expect(machine, MealyMachine, op)
            label = Fraction(initial_label) if initial_label is not None else None
            result = mealy_to_moore(machine, initial_label=label)
        elif op == "repair":
            _expect(machine, GuardedMachine, op)
            result = repair_nondeterminism(machine)
        else:  # summarize
            _expect(machine, MealyMachine, op)
            props = _propositions_of(machine)
            edges = summarize_transitions(machine, props)
            lines = [
                f"q{e.src} -> q{e.dst} [{e.output}]: {e.guard}" for e in edges
            ]
            Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
            click.echo(f"wrote {len(edges)} summarized edges to {out_path}")
            return
    except RemapError as exc:
        raise click.ClickException(str(exc)) from exc
    save_machine(result, out_path)
    click.echo(f"wrote {out_path}")


def _expect(machine, cls, op):
    if not isinstance(machine, cls):
        raise click.ClickException(
            f"--op {op} needs a {cls.__name__}, got {machine.__class__.__name__}"
        )


def _propositions_of(machine: MealyMachine) -> tuple[str, ...]:
    """Propositions appearing in brace-style symbol displays."""
    props: list[str] = []
    for sym in machine.input_alphabet:
        text = sym.display.strip()
        parts = (
            [p.strip() for p in text[1:-1].split(",") if p.strip()]
            if text.startswith("{")
            else [text]
        )
        for p in parts:
            if p not in props:
                props.append(p)
    return tuple(props)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, help="bind address (loopback by default)")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui-dir", type=click.Path(), default=None, help="static teaching-UI assets")
def serve(host, port, ui_dir):
    """Start the interactive session API (plus the teaching UI if built)."""
    import uvicorn

    from .api import create_app

    if ui_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        ui_dir = candidate if candidate.is_dir() else None
    app = create_app(ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
