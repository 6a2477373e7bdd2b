import math

import pytest
from hypothesis import given, strategies as st

from stringpred.automata import power_block_dfa, constant_dfa, thue_morse_dfa, word_from_dfa
from stringpred.core import AB, BINARY, Word, ceil_log
from stringpred.generators import (
    ContinuedFraction,
    characteristic_blocks,
    characteristic_direct,
    fibonacci_word,
    thue_morse,
)
from stringpred.lz77 import lzc
from stringpred.slp import (
    LiteralSlp,
    Slp,
    SlpError,
    Var,
    binarize,
    characteristic_build,
    characteristic_chain,
    evaluate,
    fibonacci_slp,
    parse_slp,
    power_slp,
    slp_from_dfa,
    truncate,
    validate,
)


def expand(P, ref=None):
    """Recursive expansion oracle."""
    if isinstance(P, LiteralSlp):
        return bytes([P.symbol])
    ref = P.root if ref is None else ref
    if not isinstance(ref, Var):
        return bytes([ref])
    return b"".join(expand(P, r) for r in P.rules[ref.id])


@st.composite
def slps(draw):
    sigma = draw(st.integers(1, 3))
    alphabet = Word.from_string("abc"[:sigma]).alphabet
    count = draw(st.integers(1, 6))
    rules = {}
    for q in range(count):
        refs = draw(
            st.lists(
                st.one_of(st.integers(0, sigma - 1), st.builds(Var, st.integers(0, max(q - 1, 0)))),
                min_size=2,
                max_size=5,
            )
        )
        refs = [r for r in refs if not (isinstance(r, Var) and q == 0)] or [0, 0]
        if q > 0:
            refs[draw(st.integers(0, len(refs) - 1))] = Var(q - 1)
        if len(refs) < 2:
            refs.append(0)
        rules[q] = tuple(refs)
    return Slp(alphabet, Var(count - 1), rules)


def test_validate_examples():
    assert validate(Slp(AB, Var(0), {0: (0, 1)})) == []
    assert any(p.startswith("fanout") for p in validate(Slp(AB, Var(0), {0: (0,)})))
    cyc = Slp(AB, Var(0), {0: (Var(1), 0), 1: (Var(2), 1), 2: (Var(1), 0)})
    assert any(p.startswith("cycle") for p in validate(cyc))


def test_evaluate_examples():
    assert str(evaluate(Slp(AB, Var(0), {0: (0, 1)}))) == "ab"
    assert evaluate(fibonacci_slp(8)) == fibonacci_word(55)
    assert evaluate(slp_from_dfa(thue_morse_dfa(), 2, 32)) == thue_morse(32)
    with pytest.raises(SlpError):
        evaluate(fibonacci_slp(20), cap=100)


def test_binarize_examples():
    P = fibonacci_slp(6)
    assert binarize(P).size == P.size
    wide = Slp(AB, Var(0), {0: (0, 1, 0, 0, 1)})
    B = binarize(wide)
    assert B.num_nonterminals == 4 and B.size == 8
    assert evaluate(B) == evaluate(wide)


def test_truncate_examples():
    P = fibonacci_slp(6)
    assert len(P) == 21
    assert truncate(P, 21) is P
    T = truncate(P, 13)
    assert evaluate(T) == fibonacci_word(13)
    B = binarize(slp_from_dfa(thue_morse_dfa(), 2, 32))
    T = truncate(B, 20)
    assert evaluate(T) == thue_morse(20) and T.size <= 2 * B.size
    with pytest.raises(SlpError):
        truncate(P, 0)


def test_slp_from_dfa_examples():
    P = slp_from_dfa(thue_morse_dfa(), 2, 32)
    assert P.size <= 2 * 5 * 2
    assert evaluate(P).data.startswith(thue_morse(32).data)
    C = slp_from_dfa(constant_dfa(AB, 0), 2, 8)
    assert C.num_nonterminals == 3 and C.size == 6 and str(evaluate(C)) == "aaaaaaaa"
    assert str(evaluate(slp_from_dfa(power_block_dfa(1), 2, 8))) == "aabbaabb"


@pytest.mark.parametrize("M,n", [(thue_morse_dfa(), 100), (power_block_dfa(2), 32), (power_block_dfa(3), 128)])
def test_slp_from_dfa_size_identity(M, n):
    P = slp_from_dfa(M, 2, n)
    assert P.size == 2 * P.num_nonterminals
    assert P.size <= M.num_states * ceil_log(2, n) * 2
    assert evaluate(P).data[:n] == word_from_dfa(M, 2, n).data


def test_power_examples():
    base = Slp(AB, Var(0), {0: (0, 1)})
    assert power_slp(base, 1) is base
    five = power_slp(base, 5)
    assert str(evaluate(five)) == "ab" * 5
    assert five.size - base.size <= 4 * 3
    eight = power_slp(base, 8)
    assert eight.num_nonterminals - base.num_nonterminals == 3
    assert eight.size - base.size == 6


def test_text_round_trip():
    for P in (fibonacci_slp(5), LiteralSlp(AB, 1), slp_from_dfa(power_block_dfa(1), 2, 8)):
        Q = parse_slp(P.to_text())
        assert evaluate(Q) == evaluate(P) and Q.size == P.size


def test_characteristic_examples():
    golden = ContinuedFraction([1] * 25)
    P = characteristic_build(golden, 13).slp
    assert evaluate(P) == characteristic_direct(golden, 13)
    assert P.size <= 24 * math.log2(13) + 8
    cf = ContinuedFraction([2, 3, 1, 1] + [1] * 22)
    assert evaluate(characteristic_build(cf, 50).slp) == characteristic_direct(cf, 50)
    short = ContinuedFraction([1, 1, 1])
    q3 = short.block_lengths()[3]
    assert evaluate(characteristic_build(short, q3).slp) == characteristic_blocks(short, 3)[0]


def test_chain_ledger():
    for coeffs in ([1] * 20, [2, 3, 1, 1, 5, 7], [7, 15, 1, 292, 1, 1, 1, 2], [2] * 12):
        cf = ContinuedFraction(coeffs)
        chain = characteristic_chain(cf)
        a = cf.coefficients
        for j in range(1, cf.depth + 1):
            level = chain.levels[j]
            assert evaluate(chain.slp(j)) == characteristic_blocks(cf, j)[0]
            if j >= 2:
                assert level.size <= 8 * math.log2(level.block_length) + 4
            if j + 1 <= cf.depth:
                grow = chain.levels[j + 1].size - level.size
                assert grow <= 4 * math.floor(math.log2(a[j])) + 2


@given(slps())
def test_random_slps(P):
    assert validate(P) == []
    word = evaluate(P)
    assert word.data == expand(P)
    assert lzc(word) <= P.size
    B = binarize(P)
    assert validate(B) == [] and B.size <= 2 * P.size and evaluate(B) == word


@given(slps(), st.data())
def test_random_truncation(P, data):
    n = data.draw(st.integers(1, len(P)))
    T = truncate(P, n)
    assert validate(T) == []
    assert T.size <= 2 * P.size
    assert evaluate(T).data == expand(P)[:n]


@given(slps(), st.integers(1, 20))
def test_random_powers(P, r):
    Q = power_slp(P, r)
    assert validate(Q) == []
    assert evaluate(Q).data == expand(P) * r
    assert Q.size - P.size <= 4 * math.floor(math.log2(r)) + 2 * (r > 1)
