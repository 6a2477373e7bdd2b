"""Hierarchical dictionary plurality predictor for words of low k-automaticity."""

from __future__ import annotations

from collections import Counter

from .core import Alphabet, Predictor, RunRecord, Word, ceil_log2, run_predictor


class HdpStateError(ValueError):
    pass


class HdpPredictor(Predictor):
    """Dictionaries of aligned blocks, one level per block size k**j.

    ``dictionaries[j - 1]`` holds level j as k-tuples of indices into level
    j - 1 (level 0 is the alphabet itself); ``buffers[j]`` is the unfinished
    block being collected at level j. The tuple->index and prefix->indices
    maps are derivable caches and are not part of the state size.
    """

    def __init__(self, alphabet: Alphabet, k: int):
        if k < 2:
            raise ValueError("base must be >= 2")
        self.alphabet = alphabet
        self.k = k
        self.dictionaries: list[list[tuple[int, ...]]] = []
        self.buffers: list[list[int]] = [[]]
        self._index: list[dict[tuple[int, ...], int]] = []
        self._by_prefix: list[dict[tuple[int, ...], list[int]]] = []

    def _add_level(self) -> None:
        self.dictionaries.append([])
        self._index.append({})
        self._by_prefix.append({})

    def _insert(self, level: int, block: tuple[int, ...]) -> int:
        entries = self.dictionaries[level - 1]
        idx = len(entries)
        entries.append(block)
        self._index[level - 1][block] = idx
        prefixes = self._by_prefix[level - 1]
        for cut in range(1, self.k + 1):
            prefixes.setdefault(block[:cut], []).append(idx)
        return idx

    def update(self, symbol: int) -> None:
        if not 0 <= symbol < self.alphabet.size:
            raise ValueError(f"symbol index {symbol} outside alphabet")
        idx = symbol
        j = 0
        while True:
            if j == len(self.buffers):
                self.buffers.append([])
            buf = self.buffers[j]
            buf.append(idx)
            if len(buf) < self.k:
                return
            block = tuple(buf)
            buf.clear()
            if j == len(self.dictionaries):
                self._add_level()
            found = self._index[j].get(block)
            idx = self._insert(j + 1, block) if found is None else found
            j += 1

    def versions(self) -> tuple[int, list[tuple[int, int]]]:
        """Level where filtering stopped and the surviving (candidate, symbol) pairs."""
        V = [(a, a) for a in range(self.alphabet.size)]
        j = 0
        while True:
            if j >= len(self.dictionaries):
                return j, V
            prefix = tuple(self.buffers[j]) if j < len(self.buffers) else ()
            table = self._by_prefix[j]
            nxt = [(idx, b) for q, b in V for idx in table.get(prefix + (q,), ())]
            if not nxt:
                return j, V
            V = nxt
            j += 1

    def predict(self) -> int:
        _, V = self.versions()
        votes = Counter(b for _, b in V)
        best = max(votes.values())
        return min(b for b, c in votes.items() if c == best)

    def state_bits(self) -> int:
        sym_bits = ceil_log2(self.alphabet.size)
        sizes = [len(d) for d in self.dictionaries]

        def index_bits(level: int) -> int:
            # bits for one index into level ``level``
            if level == 0:
                return sym_bits
            return ceil_log2(max(sizes[level - 1], 2))

        total = 0
        for j, entries in enumerate(self.dictionaries, start=1):
            total += len(entries) * self.k * index_bits(j - 1)
        for j, buf in enumerate(self.buffers):
            total += len(buf) * index_bits(j)
        return total

    def dictionary_sizes(self) -> list[int]:
        return [len(d) for d in self.dictionaries]

    @property
    def num_levels(self) -> int:
        return len(self.buffers)

    def reconstruct(self) -> Word:
        """History rebuilt from the state: top buffer first, each index expanded downward."""
        memo: dict[tuple[int, int], bytes] = {}

        def expand(level: int, idx: int) -> bytes:
            if level == 0:
                if not 0 <= idx < self.alphabet.size:
                    raise HdpStateError(f"symbol index {idx} outside alphabet")
                return bytes([idx])
            key = (level, idx)
            if key not in memo:
                if level > len(self.dictionaries) or not 0 <= idx < len(self.dictionaries[level - 1]):
                    raise HdpStateError(f"dangling index {idx} at level {level}")
                memo[key] = b"".join(expand(level - 1, i) for i in self.dictionaries[level - 1][idx])
            return memo[key]

        out = b"".join(
            expand(j, idx) for j in range(len(self.buffers) - 1, -1, -1) for idx in self.buffers[j]
        )
        return Word(out, self.alphabet)

    def to_text(self) -> str:
        lines = [f"hdp k={self.k} alphabet={self.alphabet.spec()}"]
        for j, entries in enumerate(self.dictionaries, start=1):
            lines.append(" ".join([f"D{j}"] + [",".join(map(str, t)) for t in entries]))
        for j, buf in enumerate(self.buffers):
            lines.append(" ".join([f"U{j}"] + [str(i) for i in buf]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> HdpPredictor:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or rows[0][0] != "hdp":
            raise HdpStateError("missing 'hdp' header line")
        header = dict(item.split("=", 1) for item in rows[0][1:])
        p = cls(Alphabet.parse(header["alphabet"]), int(header["k"]))
        dicts: dict[int, list[tuple[int, ...]]] = {}
        bufs: dict[int, list[int]] = {}
        for row in rows[1:]:
            tag, level = row[0][0], int(row[0][1:])
            if tag == "D":
                dicts[level] = [tuple(int(v) for v in item.split(",")) for item in row[1:]]
            elif tag == "U":
                bufs[level] = [int(v) for v in row[1:]]
            else:
                raise HdpStateError(f"bad state line {' '.join(row)!r}")
        for level in range(1, max(dicts, default=0) + 1):
            p._add_level()
            for block in dicts.get(level, []):
                if len(block) != p.k or block in p._index[level - 1]:
                    raise HdpStateError(f"bad or duplicate entry {block} at level {level}")
                p._insert(level, block)
        p.buffers = [bufs.get(j, []) for j in range(max(bufs, default=0) + 1)]
        if any(len(b) >= p.k for b in p.buffers):
            raise HdpStateError("buffer holds a complete block")
        p.reconstruct()
        return p


def run_hdp(x: Word, k: int) -> tuple[RunRecord, HdpPredictor]:
    p = HdpPredictor(x.alphabet, k)
    return run_predictor(p, x), p
