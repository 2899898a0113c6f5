"""Shipped machine files stay loadable and mean what their names say."""

from pathlib import Path

import pytest

from remap.automata.guards import GuardedMachine
from remap.automata.io import load_machine
from remap.automata.machines import MealyMachine, MooreMachine, parse_sequence
from remap.automata.regexes import from_regex_union
from remap.automata.transform import complete_with_halt, isomorphic, mealy_to_moore

MACHINES = Path(__file__).resolve().parents[1] / "machines"


def test_all_fixtures_load():
    paths = sorted(MACHINES.glob("*.json"))
    assert len(paths) >= 5
    for path in paths:
        load_machine(path)


def test_astarb_fixture_is_the_regex_machine():
    m = load_machine(MACHINES / "astarb.json")
    assert isinstance(m, MooreMachine)
    assert isomorphic(m, from_regex_union(["a*b"], m.input_alphabet))


def test_union_fixture_is_the_regex_machine():
    m = load_machine(MACHINES / "astarb_or_bstara.json")
    assert isomorphic(m, from_regex_union(["a*b", "b*a"], m.input_alphabet))


@pytest.mark.parametrize(
    "name,n_states", [("office_delivery.json", 3), ("craft_build.json", 5)]
)
def test_task_fixtures_shape(name, n_states):
    m = load_machine(MACHINES / name)
    assert isinstance(m, MealyMachine)
    assert m.n_states == n_states
    assert len(m.terminal_states) == 1
    # completing with a halt state yields a usable ground truth
    moore = mealy_to_moore(complete_with_halt(m, 0))
    assert moore.n_states == n_states + 1


def test_office_rewards_delivery_after_pickup():
    m = load_machine(MACHINES / "office_delivery.json")
    seq = parse_sequence(m.input_alphabet, ["{m}", "{o}"])
    assert m.run(seq) == 1
    wrong_order = parse_sequence(m.input_alphabet, ["{o}", "{m}"])
    assert m.run(wrong_order) == 0


def test_craft_rewards_any_gathering_order():
    m = load_machine(MACHINES / "craft_build.json")
    for order in (["{w}", "{i}", "{f}"], ["{i}", "{w}", "{f}"], ["{w,i}", "{f}"]):
        assert m.run(parse_sequence(m.input_alphabet, order)) == 1
    assert m.run(parse_sequence(m.input_alphabet, ["{w}", "{f}"])) == 0


def test_overlap_fixture_is_the_documented_pattern():
    m = load_machine(MACHINES / "craft_overlap.json")
    assert isinstance(m, GuardedMachine)
    assert not m.is_deterministic()
