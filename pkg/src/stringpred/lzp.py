"""Lempel-Ziv plurality predictor.

The persistent state is the list of greedy LZ77 factors of the history. A
suffix index over the decoded history is rebuilt whenever the history changes;
it is a cache shared by one predict/update pair and never counted as state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Alphabet, Predictor, RunRecord, Word, ceil_log2, run_predictor
from .lz77 import Copy, Factorization, Literal, expand_entries, greedy_lengths
from .suffix_index import SuffixIndex, ipc, ipm


@dataclass
class LzpStep:
    """One round as seen by an instrumented run."""

    t: int
    factor_start: int | None
    votes: tuple[int, ...]
    predicted: int
    observed: int | None = None
    extended: bool = False


class LzpPredictor(Predictor):
    def __init__(self, alphabet: Alphabet, strict: bool = False, trace: bool = False):
        self.alphabet = alphabet
        self.entries: list[Literal | Copy] = []
        self.strict = strict
        self.trace: list[LzpStep] | None = [] if trace else None
        self._history = bytearray()
        self._index: SuffixIndex | None = None
        self._pending: LzpStep | None = None

    # transient helpers

    def _text(self) -> bytes:
        if self.strict:
            decoded = expand_entries(self.entries)
            assert decoded == self._history
            return bytes(decoded)
        return bytes(self._history)

    def _suffix_index(self) -> SuffixIndex:
        if self._index is None:
            self._index = SuffixIndex.build(Word(self._text(), self.alphabet))
        return self._index

    def _last_factor_start(self) -> int:
        last = self.entries[-1]
        return len(self._history) - last.length

    # contract

    def votes(self) -> tuple[int, ...]:
        """Continuation counts of the last factor's earlier occurrences, per symbol."""
        if not self.entries:
            return (0,) * self.alphabet.size
        idx = self._suffix_index()
        pos = self._last_factor_start()
        return tuple(ipc(idx, pos, a) for a in range(self.alphabet.size))

    def predict(self) -> int:
        counts = self.votes()
        guess = counts.index(max(counts))
        if self.trace is not None:
            start = self._last_factor_start() if self.entries else None
            self._pending = LzpStep(len(self._history), start, counts, guess)
        return guess

    def update(self, symbol: int) -> None:
        if not 0 <= symbol < self.alphabet.size:
            raise ValueError(f"symbol index {symbol} outside alphabet")
        extended = False
        if not self.entries:
            self.entries.append(Literal(symbol))
        else:
            last = self.entries[-1]
            match = ipm(self._suffix_index(), self._last_factor_start(), symbol)
            if match is not None:
                self.entries[-1] = Copy(match, last.length + 1)
                extended = True
            else:
                self.entries.append(Literal(symbol))
        self._history.append(symbol)
        self._index = None
        if self.trace is not None:
            step = self._pending or LzpStep(len(self._history) - 1, None, (), -1)
            step.observed = symbol
            step.extended = extended
            self.trace.append(step)
            self._pending = None

    def state_bits(self) -> int:
        n = len(self._history)
        literal = ceil_log2(self.alphabet.size) + 1
        ref = 2 * ceil_log2(n + 1) + 1
        return sum(literal if isinstance(e, Literal) else ref for e in self.entries)

    # state views

    def decompress(self) -> Word:
        return Word(bytes(expand_entries(self.entries)), self.alphabet)

    def factor_lengths(self) -> list[int]:
        return [e.length for e in self.entries]

    def to_text(self) -> str:
        return Factorization(tuple(self.entries), self.alphabet).to_text()

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | None = None) -> LzpPredictor:
        f = Factorization.from_text(text, alphabet)
        p = cls(f.alphabet)
        p.entries = list(f.entries)
        p._history = expand_entries(p.entries)
        return p


def run_lzp(x: Word, trace: bool = False, strict: bool = False) -> tuple[RunRecord, LzpPredictor]:
    p = LzpPredictor(x.alphabet, strict=strict, trace=trace)
    return run_predictor(p, x), p


def mistake_bound(x: Word) -> float:
    """lzc(x) * (log2 n + 1)."""
    return len(greedy_lengths(x)) * (math.log2(len(x)) + 1)


def halving_failures(trace: list[LzpStep]) -> list[int]:
    """Mistaken steps that extended the current factor without halving the vote total.

    On such a step the survivors are exactly the votes for the observed symbol.
    """
    bad = []
    for step in trace:
        if step.extended and step.predicted != step.observed:
            if 2 * step.votes[step.observed] > sum(step.votes):
                bad.append(step.t)
    return bad


def mistakes_per_factor(record: RunRecord, lengths: list[int]) -> list[int]:
    """Mistakes falling inside each factor, given the factor lengths of the parse."""
    counts = [0] * len(lengths)
    bounds = []
    pos = 0
    for length in lengths:
        pos += length
        bounds.append(pos)
    j = 0
    for t in record.mistake_times:
        while bounds[j] <= t:
            j += 1
        counts[j] += 1
    return counts
