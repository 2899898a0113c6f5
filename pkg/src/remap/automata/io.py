"""Textual machine files (JSON) with exact rationals serialized as strings.

Schema, Moore:
  {"kind": "moore", "input_alphabet": ["a", ...], "output_alphabet": ["0", ...],
   "states": ["q0", ...], "initial": "q0",
   "delta": {"q0": {"a": "q0", ...}, ...}, "labels": {"q0": "0", ...}}

Mealy machines use "outputs": {"q0": {"a": "0"}} in place of "labels" and may
carry a "terminal" list naming the states with no outgoing transitions.
Guarded machines (kind "guarded") carry "propositions" and a "transitions"
list of {"from", "guard", "to", "output"} records. Unknown fields are
rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from ..errors import SchemaError
from .guards import GuardedMachine, GuardedTransition
from .machines import MealyMachine, MooreMachine, make_alphabet

_MOORE_KEYS = {"kind", "input_alphabet", "output_alphabet", "states", "initial", "delta", "labels"}
_MEALY_KEYS = {"kind", "input_alphabet", "output_alphabet", "states", "initial", "delta", "outputs", "terminal"}
_GUARDED_KEYS = {"kind", "propositions", "states", "initial", "transitions"}

Machine = MooreMachine | MealyMachine | GuardedMachine


def _fraction(text, context: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{context}: bad rational {text!r}") from exc


def _check_keys(data: dict, allowed: set[str], required: set[str]) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")


def _state_index(data: dict) -> dict[str, int]:
    states = data["states"]
    if not isinstance(states, list) or not states:
        raise SchemaError("states must be a nonempty list")
    if len(set(states)) != len(states):
        raise SchemaError("duplicate state names")
    return {name: i for i, name in enumerate(states)}


def machine_from_dict(data: dict) -> Machine:
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError("machine file must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "moore":
        return _moore_from_dict(data)
    if kind == "mealy":
        return _mealy_from_dict(data)
    if kind == "guarded":
        return _guarded_from_dict(data)
    raise SchemaError(f"unknown machine kind {kind!r}")


def _alphabets_from_dict(data: dict):
    try:
        alphabet = make_alphabet(data["input_alphabet"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    outs = [_fraction(v, "output_alphabet") for v in data["output_alphabet"]]
    if len(set(outs)) != len(outs):
        raise SchemaError("duplicate output values")
    return alphabet, tuple(sorted(outs))


def _delta_from_dict(data: dict, index: dict[str, int], alphabet, *, partial: bool):
    delta = {}
    raw = data["delta"]
    by_display = {s.display: s.id for s in alphabet}
    if not isinstance(raw, dict):
        raise SchemaError("delta must be an object")
    for state_name, row in raw.items():
        if state_name not in index:
            raise SchemaError(f"delta mentions unknown state {state_name!r}")
        for sym_name, target in row.items():
            if sym_name not in by_display:
                raise SchemaError(f"delta mentions unknown symbol {sym_name!r}")
            if target not in index:
                raise SchemaError(f"delta targets unknown state {target!r}")
            delta[(index[state_name], by_display[sym_name])] = index[target]
    if not partial:
        expected = len(index) * len(alphabet)
        if len(delta) != expected:
            raise SchemaError("moore delta must be total")
    return delta


def _moore_from_dict(data: dict) -> MooreMachine:
    _check_keys(data, _MOORE_KEYS, _MOORE_KEYS)
    index = _state_index(data)
    alphabet, out_alpha = _alphabets_from_dict(data)
    delta_map = _delta_from_dict(data, index, alphabet, partial=False)
    if data["initial"] not in index:
        raise SchemaError(f"unknown initial state {data['initial']!r}")
    labels_raw = data["labels"]
    if set(labels_raw) != set(index):
        raise SchemaError("labels must cover exactly the declared states")
    labels = tuple(
        _fraction(labels_raw[name], "labels") for name in data["states"]
    )
    n = len(index)
    table = tuple(
        tuple(delta_map[(q, a)] for a in range(len(alphabet))) for q in range(n)
    )
    try:
        return MooreMachine(
            input_alphabet=alphabet,
            output_alphabet=out_alpha,
            delta=table,
            labels=labels,
            initial=index[data["initial"]],
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _mealy_from_dict(data: dict) -> MealyMachine:
    _check_keys(data, _MEALY_KEYS, _MEALY_KEYS - {"terminal"})
    index = _state_index(data)
    alphabet, out_alpha = _alphabets_from_dict(data)
    delta = _delta_from_dict(data, index, alphabet, partial=True)
    if data["initial"] not in index:
        raise SchemaError(f"unknown initial state {data['initial']!r}")
    by_display = {s.display: s.id for s in alphabet}
    outputs = {}
    for state_name, row in data["outputs"].items():
        if state_name not in index:
            raise SchemaError(f"outputs mentions unknown state {state_name!r}")
        for sym_name, value in row.items():
            if sym_name not in by_display:
                raise SchemaError(f"outputs mentions unknown symbol {sym_name!r}")
            outputs[(index[state_name], by_display[sym_name])] = _fraction(value, "outputs")
    try:
        machine = MealyMachine(
            input_alphabet=alphabet,
            output_alphabet=out_alpha,
            n_states=len(index),
            delta=delta,
            outputs=outputs,
            initial=index[data["initial"]],
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if "terminal" in data:
        declared = set(data["terminal"])
        if not declared <= set(index):
            raise SchemaError("terminal mentions unknown states")
        actual = {data["states"][q] for q in machine.terminal_states}
        if declared != actual:
            raise SchemaError(
                f"terminal list {sorted(declared)} does not match states "
                f"without outgoing transitions {sorted(actual)}"
            )
    return machine


def _guarded_from_dict(data: dict) -> GuardedMachine:
    _check_keys(data, _GUARDED_KEYS, _GUARDED_KEYS)
    index = _state_index(data)
    props = tuple(data["propositions"])
    if len(set(props)) != len(props):
        raise SchemaError("duplicate propositions")
    if data["initial"] not in index:
        raise SchemaError(f"unknown initial state {data['initial']!r}")
    transitions = []
    for rec in data["transitions"]:
        if set(rec) != {"from", "guard", "to", "output"}:
            raise SchemaError(f"bad transition record fields: {sorted(rec)}")
        if rec["from"] not in index or rec["to"] not in index:
            raise SchemaError("transition endpoint unknown")
        transitions.append(
            GuardedTransition(
                index[rec["from"]], rec["guard"], index[rec["to"]],
                _fraction(rec["output"], "transitions"),
            )
        )
    return GuardedMachine(
        propositions=props,
        n_states=len(index),
        transitions=tuple(transitions),
        initial=index[data["initial"]],
    )


def machine_to_dict(m: Machine) -> dict:
    if isinstance(m, MooreMachine):
        names = [f"q{i}" for i in range(m.n_states)]
        return {
            "kind": "moore",
            "input_alphabet": [s.display for s in m.input_alphabet],
            "output_alphabet": [str(v) for v in m.output_alphabet],
            "states": names,
            "initial": names[m.initial],
            "delta": {
                names[q]: {
                    s.display: names[m.delta[q][s.id]] for s in m.input_alphabet
                }
                for q in range(m.n_states)
            },
            "labels": {names[q]: str(m.labels[q]) for q in range(m.n_states)},
        }
    if isinstance(m, MealyMachine):
        names = [f"q{i}" for i in range(m.n_states)]
        delta: dict[str, dict[str, str]] = {}
        outputs: dict[str, dict[str, str]] = {}
        for q in range(m.n_states):
            for s in m.input_alphabet:
                if (q, s.id) in m.delta:
                    delta.setdefault(names[q], {})[s.display] = names[m.delta[(q, s.id)]]
                    outputs.setdefault(names[q], {})[s.display] = str(m.outputs[(q, s.id)])
        return {
            "kind": "mealy",
            "input_alphabet": [s.display for s in m.input_alphabet],
            "output_alphabet": [str(v) for v in m.output_alphabet],
            "states": names,
            "initial": names[m.initial],
            "delta": delta,
            "outputs": outputs,
            "terminal": sorted(names[q] for q in m.terminal_states),
        }
    if isinstance(m, GuardedMachine):
        names = [f"q{i}" for i in range(m.n_states)]
        return {
            "kind": "guarded",
            "propositions": list(m.propositions),
            "states": names,
            "initial": names[m.initial],
            "transitions": [
                {
                    "from": names[t.src],
                    "guard": t.guard,
                    "to": names[t.dst],
                    "output": str(t.output),
                }
                for t in m.transitions
            ],
        }
    raise TypeError(f"not a machine: {type(m)}")


def load_machine(path: str | Path) -> Machine:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return machine_from_dict(data)


def save_machine(m: Machine, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(machine_to_dict(m), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
