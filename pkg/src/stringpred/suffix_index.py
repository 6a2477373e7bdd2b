"""Suffix-array index with RA/SA/ISA/LCE probes and internal pattern count/match queries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import Word


@dataclass
class ProbeCounter:
    ra: int = 0
    sa: int = 0
    isa: int = 0
    lce: int = 0

    @property
    def total(self) -> int:
        return self.ra + self.sa + self.isa + self.lce

    def reset(self) -> None:
        self.ra = self.sa = self.isa = self.lce = 0


@dataclass
class SuffixIndex:
    """Plain suffix array plus its inverse over an explicit word.

    Every oracle access goes through :meth:`RA`, :meth:`SA`, :meth:`ISA` or
    :meth:`LCE` so that ``probes`` counts them.
    """

    text: Word
    sa: np.ndarray
    isa: np.ndarray
    probes: ProbeCounter = field(default_factory=ProbeCounter)

    @classmethod
    def build(cls, x: Word) -> SuffixIndex:
        if len(x) == 0:
            raise ValueError("cannot index an empty word")
        s = np.frombuffer(x.data, dtype=np.uint8).astype(np.int64)
        sa = _kernels.sa_is(s, max(x.alphabet.size - 1, 0))
        isa = np.empty_like(sa)
        isa[sa] = np.arange(len(sa), dtype=sa.dtype)
        return cls(x, sa, isa)

    @property
    def n(self) -> int:
        return len(self.text)

    def RA(self, i: int) -> int:
        self.probes.ra += 1
        return self.text.data[i]

    def SA(self, r: int) -> int:
        self.probes.sa += 1
        return int(self.sa[r])

    def ISA(self, i: int) -> int:
        self.probes.isa += 1
        return int(self.isa[i])

    def LCE(self, i: int, j: int) -> int:
        self.probes.lce += 1
        return lce(self, i, j)


def build(x: Word) -> SuffixIndex:
    return SuffixIndex.build(x)


def lce(idx: SuffixIndex, i: int, j: int) -> int:
    """Length of the longest common prefix of the suffixes at i and j."""
    data = idx.text.data
    m = idx.n - max(i, j)
    if data[i : i + m] == data[j : j + m]:
        return m
    a = np.frombuffer(data, dtype=np.uint8, count=m, offset=i)
    b = np.frombuffer(data, dtype=np.uint8, count=m, offset=j)
    return int(np.argmax(a != b))


def pattern_range(idx: SuffixIndex, i: int, a: int) -> tuple[int, int] | None:
    """Rank interval of the suffixes that start with x[i:] followed by ``a``.

    Three binary searches: the end of the block of suffixes extending x[i:],
    then the first and last rank in it whose symbol right after the prefix is ``a``.
    """
    n = idx.n
    if not 0 <= i < n:
        raise IndexError(f"position {i} outside word of length {n}")
    length = n - i
    own_rank = idx.ISA(i)
    left, right = own_rank, n - 1
    block_end = own_rank
    while left <= right:
        mid = (left + right) // 2
        j = idx.SA(mid)
        if idx.LCE(i, j) >= length:
            block_end = mid
            left = mid + 1
        else:
            right = mid - 1
    if block_end == own_rank:
        return None

    first = None
    left, right = own_rank + 1, block_end
    while left <= right:
        mid = (left + right) // 2
        j = idx.SA(mid)
        assert j + length < n, "extension read past the end of the text"
        if idx.RA(j + length) >= a:
            first = mid
            right = mid - 1
        else:
            left = mid + 1
    if first is None or idx.RA(idx.SA(first) + length) != a:
        return None

    last = first
    left, right = first, block_end
    while left <= right:
        mid = (left + right) // 2
        j = idx.SA(mid)
        assert j + length < n, "extension read past the end of the text"
        if idx.RA(j + length) <= a:
            last = mid
            left = mid + 1
        else:
            right = mid - 1
    return first, last


def ipc(idx: SuffixIndex, i: int, a: int) -> int:
    found = pattern_range(idx, i, a)
    if found is None:
        return 0
    return found[1] - found[0] + 1


def ipm(idx: SuffixIndex, i: int, a: int) -> int | None:
    found = pattern_range(idx, i, a)
    if found is None:
        return None
    return idx.SA(found[0])
