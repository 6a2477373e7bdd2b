import math

from hypothesis import given, strategies as st

from stringpred.core import Alphabet, Word
from stringpred.suffix_index import SuffixIndex, ipc, ipm, lce, pattern_range

from conftest import words


def idx_of(text, alphabet=None):
    return SuffixIndex.build(Word.from_string(text, alphabet))


def brute_occurrences(data: bytes, i: int, a: int) -> list[int]:
    pattern = data[i:] + bytes([a])
    return [j for j in range(len(data)) if data[j : j + len(pattern)] == pattern]


def test_small_suffix_arrays():
    idx = idx_of("abab")
    assert list(idx.sa) == [2, 0, 3, 1]
    assert list(idx.isa) == [1, 3, 0, 2]
    assert list(idx_of("aaa").sa) == [2, 1, 0]


def test_lce_examples():
    idx = idx_of("abab")
    assert lce(idx, 0, 2) == 2
    assert all(lce(idx, i, i) == 4 - i for i in range(4))


def test_pattern_range_examples():
    idx = idx_of("abab")
    lo, hi = pattern_range(idx, 2, 0)
    assert [idx.sa[r] for r in range(lo, hi + 1)] == [0]
    assert pattern_range(idx, 2, 1) is None
    assert pattern_range(idx, 0, 0) is None
    assert ipm(idx, 2, 0) == 0


def test_ipc_examples():
    assert ipc(idx_of("abababab"), 4, 0) == 2
    abc = Alphabet(("a", "b", "c"))
    idx = idx_of("abbab", abc)
    assert ipc(idx, 4, 2) == 0


@given(words(max_size=64))
def test_index_against_naive_sort(x):
    idx = SuffixIndex.build(x)
    data = x.data
    assert list(idx.sa) == sorted(range(len(data)), key=lambda i: data[i:])
    assert all(idx.sa[idx.isa[i]] == i for i in range(len(data)))


@given(words(max_size=64), st.data())
def test_lce_against_scan(x, draw):
    idx = SuffixIndex.build(x)
    n = len(x)
    i = draw.draw(st.integers(0, n - 1))
    j = draw.draw(st.integers(0, n - 1))
    length = 0
    while max(i, j) + length < n and x.data[i + length] == x.data[j + length]:
        length += 1
    assert lce(idx, i, j) == length


@given(words(min_size=1, max_size=64))
def test_queries_against_brute_force(x):
    idx = SuffixIndex.build(x)
    data, n = x.data, len(x)
    for i in range(n):
        total = 0
        for a in range(x.alphabet.size):
            occ = brute_occurrences(data, i, a)
            idx.probes.reset()
            assert ipc(idx, i, a) == len(occ)
            if n >= 8:
                assert idx.probes.total <= 8 * math.log2(n)
            elif n >= 2:
                # three searches cost a few probes even when log2 n is tiny
                assert idx.probes.total <= 8 * math.log2(n) + 4
            j = ipm(idx, i, a)
            if occ:
                assert j in occ
                assert data[j : j + n - i + 1] == data[i:] + bytes([a])
            else:
                assert j is None
            total += len(occ)
        # suffixes having x[i:] as a proper prefix
        assert total == sum(1 for j in range(n) if j != i and data[j:].startswith(data[i:]) and n - j > n - i)
