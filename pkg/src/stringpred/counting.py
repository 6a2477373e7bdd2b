"""Counting complexity by enumeration and the phase-doubling plurality predictor at toy scale."""

from __future__ import annotations

import abc
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .automata import exact_automaticity
from .core import Alphabet, RunRecord, Word
from .lz77 import lzc

ENUMERATION_BUDGET = 1 << 17


class BudgetExceeded(RuntimeError):
    pass


class ComplexityMeasure(abc.ABC):
    name: str = "measure"

    def __init__(self):
        self._tables: dict[tuple[int, Alphabet], np.ndarray] = {}

    @abc.abstractmethod
    def evaluate(self, word: Word) -> int: ...

    def table(self, length: int, alphabet: Alphabet) -> np.ndarray:
        """Values on every word of ``length``, indexed by its base-sigma code (first symbol most significant)."""
        key = (length, alphabet)
        if key not in self._tables:
            sigma = alphabet.size
            if sigma**length > ENUMERATION_BUDGET:
                raise BudgetExceeded(f"{sigma}^{length} words exceed the enumeration budget")
            values = [
                self.evaluate(Word(bytes(w), alphabet))
                for w in itertools.product(range(sigma), repeat=length)
            ]
            self._tables[key] = np.array(values, dtype=np.int64)
        return self._tables[key]


class LzcMeasure(ComplexityMeasure):
    name = "lzc"

    def evaluate(self, word: Word) -> int:
        return lzc(word) if len(word) else 0


class AutomaticityMeasure(ComplexityMeasure):
    """Exact k-automaticity; raises when no automaton within ``s_max`` states exists."""

    def __init__(self, k: int = 2, s_max: int = 6):
        super().__init__()
        self.k = k
        self.s_max = s_max
        self.name = f"ac{k}"

    def evaluate(self, word: Word) -> int:
        if len(word) == 0:
            return 1
        found = exact_automaticity(word, self.k, self.s_max)
        if found is None:
            raise BudgetExceeded(f"automaticity of {word!r} exceeds {self.s_max} states")
        return found[0]


def count_words(n: int, m: int, C: ComplexityMeasure, alphabet: Alphabet) -> int:
    return int(np.count_nonzero(C.table(n, alphabet) <= m))


def counting_complexity(n: int, m: int, C: ComplexityMeasure, alphabet: Alphabet) -> float:
    """log2 of the number of length-n words with complexity at most m (-inf when none)."""
    count = count_words(n, m, C, alphabet)
    return math.log2(count) if count else -math.inf


@dataclass
class Phase:
    complexity_bound: int
    length_bound: int
    start: int
    end: int = 0
    mistakes: int = 0
    initial_space: int = 0


@dataclass
class PhaseLog:
    phases: list[Phase] = field(default_factory=list)
    # (t, |V| before the step, survivors after it) on every mistaken step
    mistaken_steps: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def total_mistakes(self) -> int:
        return sum(p.mistakes for p in self.phases)


def plurality_run(x: Word, C: ComplexityMeasure) -> tuple[RunRecord, PhaseLog]:
    """Plurality vote over every word consistent with the history and the current bounds.

    Bounds start at 1 and double (the complexity bound jumps to C(x) if that is
    larger) as soon as the history reaches them. Words no longer than the
    history are counted in the version space but cannot vote.
    """
    n = len(x)
    if n == 0:
        raise ValueError("target word must be nonempty")
    alphabet = x.alphabet
    sigma = alphabet.size
    c, l = 1, 1
    code = 0
    log = PhaseLog()
    phase = Phase(c, l, 0)
    predictions, mistake_times = [], []
    for t in range(n):
        space = 0
        votes = [0] * sigma
        for L in range(t, l + 1):
            ok = C.table(L, alphabet) <= c
            span = sigma ** (L - t)
            space += int(np.count_nonzero(ok[code * span : (code + 1) * span]))
            if L > t:
                sub = span // sigma
                for a in range(sigma):
                    lo = (code * sigma + a) * sub
                    votes[a] += int(np.count_nonzero(ok[lo : lo + sub]))
        if t == phase.start:
            phase.initial_space = space
        guess = votes.index(max(votes))
        observed = x.data[t]
        predictions.append(guess)
        if guess != observed:
            mistake_times.append(t)
            phase.mistakes += 1
            log.mistaken_steps.append((t, space, votes[observed]))
        code = code * sigma + observed
        prefix = x[: t + 1]
        changed = False
        if t + 1 >= l:
            l *= 2
            changed = True
        value = C.evaluate(prefix)
        if value >= c:
            c = max(2 * c, value)
            changed = True
        if changed or t == n - 1:
            phase.end = t + 1
            log.phases.append(phase)
            phase = Phase(c, l, t + 1)
    record = RunRecord(
        n=n,
        mistakes=len(mistake_times),
        mistake_times=mistake_times,
        max_state_bits=0,
        predictions=predictions,
        observed=x.data,
    )
    return record, log


def phase_bound_failures(log: PhaseLog, C: ComplexityMeasure, alphabet: Alphabet) -> list[Phase]:
    """Phases whose mistakes exceed the counting complexity at their bounds plus one."""
    return [
        p
        for p in log.phases
        if p.mistakes > counting_complexity(p.length_bound, p.complexity_bound, C, alphabet) + 1
    ]


def halving_failures(log: PhaseLog) -> list[int]:
    return [t for t, space, survivors in log.mistaken_steps if 2 * survivors > space]
