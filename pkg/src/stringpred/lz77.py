"""LZ77 and k-aligned LZ77 factorizations, their validators, and a DP minimality oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _kernels
from .core import Alphabet, Word


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class Literal:
    symbol: int

    @property
    def length(self) -> int:
        return 1


@dataclass(frozen=True)
class Copy:
    source: int
    length: int


Entry = Union[Literal, Copy]


@dataclass(frozen=True)
class Factorization:
    entries: tuple[Entry, ...]
    alphabet: Alphabet

    def __len__(self):
        return len(self.entries)

    @property
    def lengths(self) -> list[int]:
        return [e.length for e in self.entries]

    @property
    def starts(self) -> list[int]:
        out, pos = [], 0
        for e in self.entries:
            out.append(pos)
            pos += e.length
        return out

    @property
    def total_length(self) -> int:
        return sum(self.lengths)

    def decode(self) -> Word:
        """Expand left to right; copies run byte by byte so overlapping sources work."""
        return Word(bytes(expand_entries(self.entries)), self.alphabet)

    def to_text(self) -> str:
        lines = [f"# alphabet={self.alphabet.spec()}"]
        for e in self.entries:
            if isinstance(e, Literal):
                lines.append(f"L {self.alphabet.token(e.symbol)}")
            else:
                lines.append(f"C {e.source} {e.length}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | None = None) -> Factorization:
        entries: list[Entry] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("alphabet=") and alphabet is None:
                    alphabet = Alphabet.parse(body.split("=", 1)[1])
                continue
            if alphabet is None:
                raise FactorizationError("factorization text needs an alphabet")
            parts = line.split()
            if parts[0] == "L" and len(parts) == 2:
                entries.append(Literal(alphabet.index(parts[1])))
            elif parts[0] == "C" and len(parts) == 3:
                entries.append(Copy(int(parts[1]), int(parts[2])))
            else:
                raise FactorizationError(f"bad factorization line {raw!r}")
        if alphabet is None:
            raise FactorizationError("factorization text needs an alphabet")
        return cls(tuple(entries), alphabet)


def expand_entries(entries) -> bytearray:
    out = bytearray()
    for idx, e in enumerate(entries):
        if isinstance(e, Literal):
            out.append(e.symbol)
            continue
        if e.length < 1 or not 0 <= e.source < len(out):
            raise FactorizationError(
                f"entry {idx}: source {e.source} not inside the {len(out)} symbols decoded so far"
            )
        if e.source + e.length <= len(out):
            out += out[e.source : e.source + e.length]
        else:
            for r in range(e.length):
                out.append(out[e.source + r])
    return out


def suffix_array(x: Word) -> np.ndarray:
    s = np.frombuffer(x.data, dtype=np.uint8).astype(np.int64)
    return _kernels.sa_is(s, max(x.alphabet.size - 1, 0))


def greedy_lengths(x: Word) -> list[int]:
    """Factor lengths of the greedy parse (a literal reported as length 0)."""
    if len(x) == 0:
        return []
    s = np.frombuffer(x.data, dtype=np.uint8).astype(np.int64)
    sa = _kernels.sa_is(s, max(x.alphabet.size - 1, 0))
    return _kernels.greedy_factor_lengths(s, sa).tolist()


def greedy_lz77(x: Word) -> Factorization:
    """Greedy LZ77 parse; each copy records its smallest valid source."""
    if len(x) == 0:
        raise FactorizationError("word must be nonempty")
    data = x.data
    entries: list[Entry] = []
    i = 0
    for length in greedy_lengths(x):
        if length == 0:
            entries.append(Literal(data[i]))
            i += 1
            continue
        # an occurrence ending before i - 1 + length starts strictly before i
        src = data.find(data[i : i + length], 0, i - 1 + length)
        assert 0 <= src < i
        entries.append(Copy(src, length))
        i += length
    return Factorization(tuple(entries), x.alphabet)


def lzc(x: Word) -> int:
    return len(greedy_lengths(x))


def validate_lz77_type(x: Word, f: Factorization) -> list[str]:
    """Violations of the LZ77-type conditions (empty list when valid)."""
    data = x.data
    problems = []
    pos = 0
    for j, e in enumerate(f.entries):
        if pos >= len(data):
            problems.append(f"coverage: factor {j} starts past the end")
            break
        if isinstance(e, Literal):
            if e.symbol != data[pos]:
                problems.append(f"mismatch: literal {j} at {pos}")
            elif e.symbol in data[:pos]:
                problems.append(f"literal not new: factor {j} at {pos}")
        else:
            if e.length < 1:
                problems.append(f"length: factor {j} is empty")
            elif not 0 <= e.source < pos:
                problems.append(f"source not earlier: factor {j} source {e.source} >= start {pos}")
            elif pos + e.length > len(data) or data[e.source : e.source + e.length] != data[pos : pos + e.length]:
                problems.append(f"mismatch: copy {j} at {pos} from {e.source}")
        pos += max(e.length, 1)
    if pos != len(data):
        problems.append(f"coverage: factors cover {pos} symbols, word has {len(data)}")
    return problems


DP_BUDGET = 4096


def min_factorization_size(x: Word) -> int:
    """Fewest factors over all LZ77-type factorizations, by shortest path over positions.

    From position p any length up to the longest previous match is allowed
    (a new symbol only as a length-1 literal).
    """
    n = len(x)
    if n == 0:
        raise FactorizationError("word must be nonempty")
    if n > DP_BUDGET:
        raise FactorizationError(f"DP oracle budget is {DP_BUDGET} symbols, got {n}")
    data = x.data
    INF = n + 1
    best = [INF] * (n + 1)
    best[0] = 0
    for p in range(n):
        if best[p] == INF:
            continue
        # longest previous factor: grow while some occurrence starts before p
        reach = 0
        while p + reach < n and data.find(data[p : p + reach + 1], 0, p + reach) != -1:
            reach += 1
        for length in range(1, max(reach, 1) + 1):
            if best[p] + 1 < best[p + length]:
                best[p + length] = best[p] + 1
    return best[n]


@dataclass(frozen=True)
class KFactor:
    """Factor at ``level`` copying aligned block ``block`` (None for a literal)."""

    level: int
    block: int | None
    length: int


@dataclass(frozen=True)
class KFactorization:
    base: int
    entries: tuple[KFactor, ...]

    def __len__(self):
        return len(self.entries)

    @property
    def starts(self) -> list[int]:
        out, pos = [], 0
        for e in self.entries:
            out.append(pos)
            pos += e.length
        return out

    def to_lz77(self, x: Word) -> Factorization:
        out: list[Entry] = []
        for start, e in zip(self.starts, self.entries):
            if e.block is None:
                out.append(Literal(x.data[start]))
            else:
                out.append(Copy(e.block * self.base**e.level, e.length))
        return Factorization(tuple(out), x.alphabet)


def greedy_k_lz77(x: Word, k: int) -> KFactorization:
    """Greedy k-aligned parse: at each start take the highest level whose block occurred earlier."""
    if k < 2:
        raise FactorizationError("base must be >= 2")
    n = len(x)
    if n == 0:
        raise FactorizationError("word must be nonempty")
    data = x.data
    # per level: content of full aligned blocks seen so far -> first block index
    seen: list[dict[bytes, int]] = []
    filled: list[int] = []
    entries = []
    pos = 0
    while pos < n:
        levels = []
        size = 1
        while size <= pos and pos % size == 0:
            levels.append(size)
            size *= k
        chosen = None
        for m in range(len(levels) - 1, -1, -1):
            size = levels[m]
            while len(seen) <= m:
                seen.append({})
                filled.append(0)
            table = seen[m]
            limit = pos // size
            while filled[m] < limit:
                b = filled[m]
                table.setdefault(data[b * size : (b + 1) * size], b)
                filled[m] += 1
            piece = data[pos : pos + size]
            if len(piece) == size:
                src = table.get(piece)
            else:
                src = next(
                    (b for b in range(limit) if data[b * size : (b + 1) * size].startswith(piece)),
                    None,
                )
            if src is not None:
                chosen = KFactor(m, src, len(piece))
                break
        if chosen is None:
            chosen = KFactor(0, None, 1)
        entries.append(chosen)
        pos += chosen.length
    return KFactorization(k, tuple(entries))


def validate_k_lz77_type(x: Word, k: int, f: KFactorization) -> list[str]:
    data = x.data
    n = len(data)
    problems = []
    pos = 0
    for j, e in enumerate(f.entries):
        size = k**e.level
        last = j == len(f.entries) - 1
        if pos % size:
            problems.append(f"alignment: factor {j} at {pos} not divisible by {size}")
        if e.length != size and not (last and 0 < e.length < size):
            problems.append(f"length: factor {j} has length {e.length}, level block is {size}")
        if e.block is None:
            if e.level != 0:
                problems.append(f"level: literal {j} must be level 0")
            elif pos < n and data[pos] in data[:pos]:
                problems.append(f"literal not new: factor {j} at {pos}")
        else:
            if not 0 <= e.block < pos // size:
                problems.append(f"source not earlier: factor {j} copies block {e.block}")
            else:
                src = data[e.block * size : (e.block + 1) * size]
                if not src.startswith(data[pos : pos + e.length]) or pos + e.length > n:
                    problems.append(f"mismatch: factor {j} at {pos}")
        pos += e.length
    if pos != n:
        problems.append(f"coverage: factors cover {pos} symbols, word has {n}")
    return problems
