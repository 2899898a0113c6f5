from fractions import Fraction

from remap.automata.transform import isomorphic, minimize
from remap.learner import remap
from remap.lstar import _ConcreteTable, lstar_baseline
from remap.teacher import MembershipOracle, SimulatedTeacher, TeacherConfig

from conftest import constant_machine, make_random_target


def test_concrete_table_trajectory_on_astarb(astarb):
    # the membership-query twin of the preference walkthrough: same
    # expansions in the same order, driven by concrete values
    a, b = astarb.input_alphabet
    table = _ConcreteTable(astarb.input_alphabet, MembershipOracle(astarb))
    table.fill()
    assert table.values[()] == 0 and table.values[(a,)] == 0 and table.values[(b,)] == 1
    assert table.unclosed_row() == (b,)
    table.add_prefix((b,))
    table.fill()
    assert table.unclosed_row() is None and table.inconsistency() is None
    table.add_prefix((b, a, b))
    table.fill()
    assert table.values[(b, a, b)] == 0
    assert table.inconsistency() == (b,)
    table.add_suffix((b,))
    table.fill()
    assert table.inconsistency() is None and table.unclosed_row() is None
    rows = {table.row(s) for s in table.prefixes}
    assert len(rows) == 3
    assert table.row(()) == (Fraction(0), Fraction(1))


def test_learns_astarb(astarb):
    membership = MembershipOracle(astarb)
    teacher = SimulatedTeacher(TeacherConfig(ground_truth=astarb))
    machine = lstar_baseline(
        astarb.input_alphabet, astarb.output_alphabet, membership, teacher.equivalence_query
    )
    assert machine.n_states == 3
    assert isomorphic(machine, astarb)


def test_one_state_target(ab_alphabet, astarb):
    truth = constant_machine(ab_alphabet, astarb.output_alphabet, 1)
    teacher = SimulatedTeacher(TeacherConfig(ground_truth=truth))
    machine = lstar_baseline(
        ab_alphabet, truth.output_alphabet, MembershipOracle(truth), teacher.equivalence_query
    )
    assert machine.n_states == 1
    assert machine.labels == (1,)


def test_agrees_with_preference_learner_on_random_targets():
    for seed in range(30):
        truth = make_random_target(seed, max_states=4, n_symbols=2, n_outputs=3)
        exact = SimulatedTeacher(TeacherConfig(ground_truth=truth))
        baseline = lstar_baseline(
            truth.input_alphabet,
            truth.output_alphabet,
            MembershipOracle(truth),
            exact.equivalence_query,
        )
        pref_teacher = SimulatedTeacher(TeacherConfig(ground_truth=truth))
        learned = remap(truth.input_alphabet, truth.output_alphabet, pref_teacher).machine
        assert isomorphic(baseline, learned)
        assert isomorphic(baseline, minimize(truth))
