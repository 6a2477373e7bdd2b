from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stringpred.automata import base_k_digits
from stringpred.core import BINARY, Word
from stringpred.generators import (
    FIBONACCI_MORPHISM,
    QUADRATIC_MORPHISM,
    THUE_MORSE_MORPHISM,
    ContinuedFraction,
    GeneratorError,
    Morphism,
    characteristic_blocks,
    characteristic_direct,
    fibonacci_word,
    growth_profile,
    morphic_prefix,
    power_block_word,
    thue_morse,
)


def test_thue_morse_published_prefix():
    assert str(thue_morse(32)) == "01101001100101101001011001101001"
    assert str(thue_morse(1)) == "0"


def test_thue_morse_popcount_parity():
    w = thue_morse(1 << 10)
    assert all(w.data[i] == bin(i).count("1") % 2 for i in range(len(w)))


@given(st.integers(1, 3000))
def test_thue_morse_prefix_stable(n):
    assert thue_morse(2 * n)[:n] == thue_morse(n)


def test_fibonacci_published_prefix():
    assert str(fibonacci_word(34)) == "0100101001001010010100100101001001"
    assert str(fibonacci_word(2)) == "01"


def test_fibonacci_recurrence_oracle():
    blocks = ["0", "01"]
    while len(blocks[-1]) < 1000:
        blocks.append(blocks[-1] + blocks[-2])
    w = str(fibonacci_word(1000))
    for b in blocks:
        if len(b) <= 1000:
            assert w.startswith(b)
    assert w == blocks[-1][:1000]


def test_power_block_small():
    assert str(power_block_word(0)) == "ab"
    assert str(power_block_word(1)) == "aabbaabb"


def test_power_block_bit_rule():
    k = 3
    w = power_block_word(k)
    assert len(w) == 128
    for t in range(128):
        assert (w.data[t] == 1) == (base_k_digits(t, 2, 2 * k + 1)[k] == 1)


def test_characteristic_half():
    assert str(characteristic_direct(Fraction(1, 2), 6)) == "101010"


def test_characteristic_direct_matches_blocks_golden():
    cf = ContinuedFraction([1] * 30)
    block, q = characteristic_blocks(cf, 9)
    assert q == 55
    assert characteristic_direct(cf, 34) == block[:34]


def test_characteristic_single_symbol():
    for theta in (Fraction(1, 3), Fraction(5, 7), Fraction(99, 100)):
        assert characteristic_direct(theta, 1).data[0] in (0, 1)


def test_characteristic_rejects_out_of_range():
    with pytest.raises(GeneratorError):
        characteristic_direct(Fraction(3, 2), 5)
    with pytest.raises(GeneratorError):
        characteristic_direct(ContinuedFraction([1, 1]), 50)


def test_block_small_levels():
    assert characteristic_blocks(ContinuedFraction([1] * 5), 1) == (Word.from_string("1", BINARY), 1)
    assert str(characteristic_blocks(ContinuedFraction([2]), 1)[0]) == "01"
    with pytest.raises(GeneratorError):
        characteristic_blocks(ContinuedFraction([2]), 2)


@given(st.lists(st.integers(1, 3), min_size=2, max_size=10))
def test_blocks_nest_and_grow(coeffs):
    cf = ContinuedFraction(coeffs)
    q = cf.block_lengths()
    prev = None
    for j in range(1, cf.depth + 1):
        block, length = characteristic_blocks(cf, j)
        assert length == q[j] == len(block)
        assert q[j] >= 2 ** (j // 2)
        if prev is not None and j >= 2:
            assert block.data.startswith(prev.data)
        prev = block


@given(st.lists(st.integers(1, 4), min_size=3, max_size=10))
def test_direct_prefix_equals_block(coeffs):
    # deepen the expansion so the convergent separates every floor below n
    cf = ContinuedFraction(coeffs + [1] * 12)
    j = len(coeffs)
    block, q = characteristic_blocks(cf, j)
    if cf.convergent().denominator > q + 2:
        assert characteristic_direct(cf, q) == block


def test_morphic_examples():
    assert morphic_prefix(THUE_MORSE_MORPHISM, "0", 32) == thue_morse(32)
    assert str(morphic_prefix(Morphism.from_strings({"a": "ab", "b": "b"}), "a", 10)) == "abbbbbbbbb"
    assert morphic_prefix(FIBONACCI_MORPHISM, "0", 34) == fibonacci_word(34)
    w = morphic_prefix(QUADRATIC_MORPHISM, "a", 16)
    # direct iteration oracle
    cur = "a"
    rules = {"a": "ab", "b": "bc", "c": "c"}
    while len(cur) < 16:
        cur = "".join(rules[c] for c in cur)
    assert str(w) == cur[:16]


def test_morphic_coding():
    w = morphic_prefix(THUE_MORSE_MORPHISM, "0", 8, coding=[1, 0], target=BINARY)
    assert str(w) == "10010110"


def test_morphic_rejects_bad_input():
    with pytest.raises(GeneratorError):
        morphic_prefix(Morphism.from_strings({"a": "ba", "b": "b"}), "a", 5)
    with pytest.raises(GeneratorError):
        morphic_prefix(Morphism.from_strings({"a": "a", "b": "b"}), "a", 5)
    with pytest.raises(GeneratorError):
        Morphism.from_strings({"a": "", "b": "b"})


def test_growth_profiles():
    assert growth_profile(THUE_MORSE_MORPHISM, "0", 10) == [2**i for i in range(1, 11)]
    assert growth_profile(Morphism.from_strings({"a": "ab", "b": "b"}), "a", 5) == [2, 3, 4, 5, 6]
    quad = growth_profile(QUADRATIC_MORPHISM, "a", 12)
    second = [quad[i + 2] - 2 * quad[i + 1] + quad[i] for i in range(len(quad) - 2)]
    assert len(set(second[2:])) == 1
    # symbol-count oracle: lengths of materialized iterates
    cur = b"\x00"
    for length in quad[:8]:
        cur = QUADRATIC_MORPHISM.apply(cur)
        assert len(cur) == length
