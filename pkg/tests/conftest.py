import itertools
import random
from fractions import Fraction

import pytest

from remap.automata.machines import MooreMachine, make_alphabet, make_output_alphabet
from remap.automata.regexes import from_regex_union
from remap.harness import random_moore


def all_sequences(alphabet, max_len):
    """Every sequence up to max_len, in length-lexicographic order."""
    for n in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield combo


def machines_agree(m1, m2, max_len):
    return all(m1.run(s) == m2.run(s) for s in all_sequences(m1.input_alphabet, max_len))


@pytest.fixture
def ab_alphabet():
    return make_alphabet(["a", "b"])


@pytest.fixture
def astarb(ab_alphabet):
    """Ground truth: 1 for sequences of a's followed by one b, else 0."""
    return from_regex_union(["a*b"], ab_alphabet)


def make_random_target(seed, max_states=5, n_symbols=2, n_outputs=2):
    """Random complete Moore machine (not minimized)."""
    rng = random.Random(seed)
    alphabet = make_alphabet([chr(ord("a") + i) for i in range(n_symbols)])
    outputs = make_output_alphabet(range(n_outputs))
    n = rng.randint(1, max_states)
    return random_moore(rng, n, alphabet, outputs)


def constant_machine(alphabet, output_alphabet, value):
    return MooreMachine(
        input_alphabet=alphabet,
        output_alphabet=output_alphabet,
        delta=(tuple(0 for _ in alphabet),),
        labels=(Fraction(value),),
    )
