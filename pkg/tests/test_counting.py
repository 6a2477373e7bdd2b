import itertools
import math

import pytest
from hypothesis import given, settings

from stringpred.core import BINARY, Alphabet, Word
from stringpred.counting import (
    AutomaticityMeasure,
    BudgetExceeded,
    LzcMeasure,
    count_words,
    counting_complexity,
    halving_failures,
    phase_bound_failures,
    plurality_run,
)
from stringpred.generators import thue_morse

from conftest import words
from oracles import naive_lzc


def naive_plurality(x: Word) -> list[int]:
    """Enumerate the version space from scratch at every step."""
    sigma = x.alphabet.size
    c = l = 1
    out = []
    for t in range(len(x)):
        votes = [0] * sigma
        for L in range(t + 1, l + 1):
            for tail in itertools.product(range(sigma), repeat=L - t):
                u = x.data[:t] + bytes(tail)
                if naive_lzc(u) <= c:
                    votes[u[t]] += 1
        out.append(votes.index(max(votes)))
        if t + 1 >= l:
            l *= 2
        value = naive_lzc(x.data[: t + 1])
        if value >= c:
            c = max(2 * c, value)
    return out


def test_counting_examples():
    C = LzcMeasure()
    ternary = Alphabet(("a", "b", "c"))
    assert counting_complexity(1, 1, C, BINARY) == 1.0
    assert counting_complexity(1, 3, C, ternary) == pytest.approx(math.log2(3))
    assert counting_complexity(4, 4, C, BINARY) == 4.0
    census = sum(1 for w in itertools.product(b"\x00\x01", repeat=8) if naive_lzc(bytes(w)) <= 3)
    assert count_words(8, 3, C, BINARY) == census
    values = [counting_complexity(8, m, C, BINARY) for m in range(1, 9)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert counting_complexity(3, 1, C, BINARY) == -math.inf


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        LzcMeasure().table(40, BINARY)


def test_automaticity_measure():
    A = AutomaticityMeasure(2, 6)
    assert A.evaluate(Word(b"", BINARY)) == 1
    assert A.evaluate(thue_morse(8)) == 2
    table = A.table(4, BINARY)
    # every word of length <= 4 is generated by at most 3 states in base 2
    assert table.max() <= 3 and table.min() == 1


@pytest.mark.parametrize(
    "x",
    [Word.from_string("0000000000", BINARY), Word.from_string("1", BINARY), thue_morse(12)],
    ids=["zeros", "single", "thue-morse-12"],
)
def test_phase_bounds(x):
    C = LzcMeasure()
    rec, log = plurality_run(x, C)
    assert phase_bound_failures(log, C, x.alphabet) == []
    assert halving_failures(log) == []
    assert rec.mistakes == log.total_mistakes
    if len(x) == 1:
        assert rec.mistakes <= 1


def test_zero_word_initial_space():
    _, log = plurality_run(Word.from_string("0000000000", BINARY), LzcMeasure())
    # l = 1, c = 1: the empty word plus both one-symbol words
    assert log.phases[0].initial_space == 3


@settings(max_examples=60)
@given(words(max_size=7, sigma=2))
def test_run_matches_naive_enumeration(x):
    C = LzcMeasure()
    rec, log = plurality_run(x, C)
    assert rec.predictions == naive_plurality(x)
    assert phase_bound_failures(log, C, x.alphabet) == []
    assert halving_failures(log) == []
    # doubling rules
    for prev, nxt in zip(log.phases, log.phases[1:]):
        assert nxt.start == prev.end
        assert nxt.length_bound in (prev.length_bound, 2 * prev.length_bound)
        assert nxt.complexity_bound == prev.complexity_bound or nxt.complexity_bound >= 2 * prev.complexity_bound


@given(words(max_size=12, sigma=2))
def test_lzc_measure_properties(x):
    C = LzcMeasure()
    value = C.evaluate(x)
    assert 1 <= value <= len(x)
    assert all(C.evaluate(x[:j]) <= value for j in range(1, len(x)))
