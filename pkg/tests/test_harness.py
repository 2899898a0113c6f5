import math

import pytest

from remap.automata.regexes import from_regex_union
from remap.errors import AlphabetMismatch
from remap.harness import (
    EvalReport,
    accuracy,
    aggregate_scaling,
    gen_eval_set,
    isomorphism_probability,
    random_moore,
    reports_to_csv,
    run_trial,
    scaling_stats,
    write_reports,
)
from remap.learner import TerminationTrace

from conftest import all_sequences, constant_machine


def test_eval_set_enumerates_short_paths(astarb, ab_alphabet):
    eval_set = gen_eval_set(astarb, n_random=0, seed=0)
    # complete 2-symbol machine with 3 states: all sequences up to length 3
    expected = set(all_sequences(ab_alphabet, 3))
    assert set(eval_set) == expected
    assert len(eval_set) == 15
    assert () in eval_set


def test_eval_set_deterministic(astarb):
    a = gen_eval_set(astarb, n_random=500, seed=9)
    b = gen_eval_set(astarb, n_random=500, seed=9)
    assert a == b
    assert gen_eval_set(astarb, n_random=500, seed=10) != a


def test_eval_set_size_bound(astarb):
    eval_set = gen_eval_set(astarb, n_random=1000, seed=1)
    assert len(eval_set) <= 1000 + sum(2 ** k for k in range(astarb.n_states + 1))


def test_eval_set_respects_cap(astarb):
    eval_set = gen_eval_set(astarb, n_random=0, seed=0, path_cap=5)
    assert len(eval_set) == 5


def test_accuracy_perfect_on_self(astarb):
    eval_set = gen_eval_set(astarb, n_random=50, seed=2)
    assert accuracy(astarb, astarb, eval_set) == 1.0


def test_accuracy_of_constant_machine(astarb, ab_alphabet):
    # brute force: sequences up to length 3 where a*b matches are b, ab, aab
    eval_set = list(all_sequences(ab_alphabet, 3))
    ones = [s for s in eval_set if astarb.run(s) == 1]
    assert len(eval_set) == 15 and len(ones) == 3
    learned = constant_machine(ab_alphabet, astarb.output_alphabet, 0)
    assert accuracy(astarb, learned, eval_set) == 12 / 15


def test_accuracy_of_flawed_first_hypothesis(astarb, ab_alphabet):
    # the walkthrough's two-state guess misclassifies bab, so any
    # evaluation set containing it scores below 1
    from fractions import Fraction

    from remap.automata.machines import MooreMachine

    first_guess = MooreMachine(
        input_alphabet=ab_alphabet,
        output_alphabet=astarb.output_alphabet,
        delta=((0, 1), (0, 0)),
        labels=(Fraction(0), Fraction(1)),
    )
    eval_set = gen_eval_set(astarb, n_random=0, seed=0)
    bab = (ab_alphabet[1], ab_alphabet[0], ab_alphabet[1])
    assert bab in eval_set
    assert accuracy(astarb, first_guess, eval_set) < 1.0


def test_accuracy_alphabet_mismatch(astarb):
    from remap.automata.machines import make_alphabet

    other = constant_machine(make_alphabet(["x", "y"]), astarb.output_alphabet, 0)
    with pytest.raises(AlphabetMismatch):
        accuracy(astarb, other, [()])


def test_run_trial_exact_is_isomorphic(astarb):
    report = run_trial(astarb, "astarb", None, base_seed=0, trial=0)
    assert report.isomorphic
    assert report.accuracy == 1.0
    assert report.pref_queries == math.comb(report.unique_sequences, 2)


def test_isomorphism_probability_exact_teacher(astarb):
    fractions, reports = isomorphism_probability(
        astarb, "astarb", [None], trials=5, base_seed=3
    )
    assert fractions[None] == 1.0
    assert len(reports) == 5


def test_isomorphism_probability_single_sample_misses(astarb):
    # one sampled sequence per equivalence query accepts flawed hypotheses
    # often enough that some runs end non-isomorphic
    fractions, _ = isomorphism_probability(
        astarb, "astarb", [1], trials=40, base_seed=11
    )
    assert fractions[1] < 1.0


def test_scaling_stats_checks_quadratic_law(astarb):
    _, reports = isomorphism_probability(astarb, "astarb", [None], trials=3, base_seed=0)
    records = scaling_stats(reports)
    assert all(r.pref_queries == math.comb(r.unique_sequences, 2) for r in records)
    bad = EvalReport(
        target="x", samples_per_eq=None, seed=0, accuracy=1.0, isomorphic=True,
        pref_queries=44, eq_queries=1, unique_sequences=10,
        max_counterexample_len=0, target_states=1, alphabet_size=2,
        trace=TerminationTrace(),
    )
    with pytest.raises(AssertionError):
        scaling_stats([bad])


def test_trivial_query_counts():
    assert math.comb(10, 2) == 45
    assert math.comb(1, 2) == 0


def test_aggregate_scaling_groups_each_axis(astarb, ab_alphabet):
    from remap.automata.machines import make_alphabet

    abc = make_alphabet(["a", "b", "c"])
    three_letter = from_regex_union(["a*b"], abc)
    reports = []
    for truth, name in [(astarb, "two"), (three_letter, "three")]:
        _, batch = isomorphism_probability(truth, name, [None], trials=2, base_seed=1)
        reports.extend(batch)
    aggregates = aggregate_scaling(scaling_stats(reports))
    assert set(aggregates) == {"alphabet_size", "target_states", "max_counterexample_len"}
    by_alpha = aggregates["alphabet_size"]
    assert set(by_alpha) == {2, 3}
    assert by_alpha[2].count == 2 and by_alpha[3].count == 2
    # three-symbol targets need more unique sequences than two-symbol ones
    assert by_alpha[3].mean_unique_sequences > by_alpha[2].mean_unique_sequences
    assert by_alpha[2].mean_pref_queries == math.comb(
        by_alpha[2].max_unique_sequences, 2
    )


def test_csv_output_deterministic(astarb, tmp_path):
    _, reports = isomorphism_probability(astarb, "astarb", [5], trials=3, base_seed=7)
    text = reports_to_csv(reports)
    assert text == reports_to_csv(reports)
    lines = text.splitlines()
    assert lines[0] == (
        "target,samples_per_eq,seed,accuracy,isomorphic,pref_queries,"
        "eq_queries,unique_sequences"
    )
    assert len(lines) == 4
    out = write_reports(reports, tmp_path / "out")
    assert out.read_text() == text
    traces = list((tmp_path / "out" / "traces").glob("*.jsonl"))
    assert len(traces) == 3


def test_pac_trend_on_union_target(ab_alphabet):
    # coarse, fast version of the acceptance-scale experiment
    truth = from_regex_union(["a*b", "b*a"], ab_alphabet)
    fractions, reports = isomorphism_probability(
        truth, "union", [5, 100], trials=20, base_seed=5
    )
    assert fractions[100] >= fractions[5]
    scaling_stats(reports)
