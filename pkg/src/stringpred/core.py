"""Alphabets, words, the predictor contract and the mistake-counting harness."""

from __future__ import annotations

import abc
import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_ALPHABET = 256


class AlphabetError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite alphabet; a symbol's index is its rank in ``symbols``."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise AlphabetError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError(f"duplicate symbols in {self.symbols!r}")
        if len(self.symbols) > MAX_ALPHABET:
            raise AlphabetError(f"at most {MAX_ALPHABET} symbols supported")
        for s in self.symbols:
            if not s or not s.isprintable() or any(c.isspace() or c == "," for c in s):
                raise AlphabetError(f"bad token {s!r}")

    @classmethod
    def of(cls, tokens: str | Iterable[str]) -> Alphabet:
        """``Alphabet.of("ab")`` or ``Alphabet.of(["x1", "x2"])``."""
        return cls(tuple(tokens))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def index(self, token: str) -> int:
        try:
            return self._lookup[token]
        except KeyError:
            raise AlphabetError(f"symbol {token!r} not in alphabet {self.symbols!r}") from None

    @cached_property
    def _lookup(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def token(self, i: int) -> str:
        return self.symbols[i]

    @property
    def compact(self) -> bool:
        """True when every token is one character, so words print without separators."""
        return all(len(s) == 1 for s in self.symbols)

    def spec(self) -> str:
        return ",".join(self.symbols)

    @classmethod
    def parse(cls, spec: str) -> Alphabet:
        return cls(tuple(spec.split(",")))


BINARY = Alphabet(("0", "1"))
AB = Alphabet(("a", "b"))


@dataclass(frozen=True)
class Word:
    """Immutable word: one byte per symbol index into ``alphabet``."""

    data: bytes
    alphabet: Alphabet

    def __post_init__(self):
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if self.data and max(self.data) >= self.alphabet.size:
            raise AlphabetError(
                f"symbol index {max(self.data)} out of range for alphabet of size {self.alphabet.size}"
            )

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet | None = None) -> Word:
        """Parse a compact string (one character per symbol).

        Without an explicit alphabet the distinct characters are taken in sorted order.
        """
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(set(text)))) if text else BINARY
        return cls(bytes(alphabet.index(c) for c in text), alphabet)

    @classmethod
    def from_tokens(cls, tokens: Sequence[str], alphabet: Alphabet) -> Word:
        return cls(bytes(alphabet.index(t) for t in tokens), alphabet)

    @classmethod
    def from_indices(cls, indices: Iterable[int], alphabet: Alphabet) -> Word:
        return cls(bytes(indices), alphabet)

    def __len__(self):
        return len(self.data)

    def __iter__(self) -> Iterator[int]:
        return iter(self.data)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(self.data[key], self.alphabet)
        return self.data[key]

    def __add__(self, other: Word) -> Word:
        if other.alphabet != self.alphabet:
            raise AlphabetError("cannot concatenate words over different alphabets")
        return Word(self.data + other.data, self.alphabet)

    def tokens(self) -> list[str]:
        return [self.alphabet.symbols[i] for i in self.data]

    def __str__(self):
        sep = "" if self.alphabet.compact else " "
        return sep.join(self.tokens())

    def __repr__(self):
        s = str(self)
        if len(s) > 40:
            s = s[:37] + "..."
        return f"Word({s!r}, n={len(self)})"

    def is_prefix_of(self, other: Word) -> bool:
        return other.data.startswith(self.data)


class Predictor(abc.ABC):
    """Deterministic state-based predictor.

    ``predict`` must not change the state; ``state_bits`` measures a canonical
    serialization of the persistent state only (caches are excluded).
    """

    alphabet: Alphabet

    @abc.abstractmethod
    def predict(self) -> int: ...

    @abc.abstractmethod
    def update(self, symbol: int) -> None: ...

    @abc.abstractmethod
    def state_bits(self) -> int: ...


class ConstantPredictor(Predictor):
    def __init__(self, alphabet: Alphabet, symbol: int = 0):
        self.alphabet = alphabet
        self.symbol = symbol

    def predict(self) -> int:
        return self.symbol

    def update(self, symbol: int) -> None:
        pass

    def state_bits(self) -> int:
        return 0


@dataclass
class RunRecord:
    n: int
    mistakes: int
    mistake_times: list[int]
    max_state_bits: int
    predictions: list[int] = field(default_factory=list)
    observed: bytes = b""
    per_step_state_bits: list[int] | None = None

    def to_csv(self) -> str:
        """Rows ``t, predicted, observed, mistake_flag, state_bits``.

        ``state_bits`` is blank when the run did not keep the per-step series.
        """
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t", "predicted", "observed", "mistake_flag", "state_bits"])
        mistakes = set(self.mistake_times)
        for t in range(self.n):
            bits = "" if self.per_step_state_bits is None else self.per_step_state_bits[t]
            w.writerow([t, self.predictions[t], self.observed[t], int(t in mistakes), bits])
        return out.getvalue()


def run_predictor(predictor: Predictor, target: Word, keep_state_series: bool = False) -> RunRecord:
    """Play the online protocol over ``target`` and count 0-1 mistakes.

    ``max_state_bits`` is the maximum over the states the predictor held before
    each of the ``n`` rounds (the initial state included, the final one not).
    """
    if len(target) == 0:
        raise ValueError("target word must be nonempty")
    if target.alphabet.size > predictor.alphabet.size:
        raise AlphabetError("target alphabet larger than the predictor's")
    mistake_times = []
    predictions = []
    series = [] if keep_state_series else None
    max_bits = 0
    for t, symbol in enumerate(target.data):
        bits = predictor.state_bits()
        max_bits = max(max_bits, bits)
        if series is not None:
            series.append(bits)
        guess = predictor.predict()
        predictions.append(guess)
        if guess != symbol:
            mistake_times.append(t)
        predictor.update(symbol)
    return RunRecord(
        n=len(target),
        mistakes=len(mistake_times),
        mistake_times=mistake_times,
        max_state_bits=max_bits,
        predictions=predictions,
        observed=target.data,
        per_step_state_bits=series,
    )


def ceil_log2(n: int) -> int:
    """Smallest b with 2**b >= n (0 for n <= 1)."""
    return (n - 1).bit_length() if n > 1 else 0


def ceil_log(k: int, n: int) -> int:
    """Smallest m with k**m >= n (0 for n <= 1)."""
    m, p = 0, 1
    while p < n:
        p *= k
        m += 1
    return m


# word file: header line "alphabet=<tokens> n=<len>", then one byte per symbol


def write_word(path, word: Word) -> None:
    with open(path, "wb") as fh:
        fh.write(f"alphabet={word.alphabet.spec()} n={len(word)}\n".encode())
        fh.write(word.data)


def read_word(path) -> Word:
    with open(path, "rb") as fh:
        header = fh.readline().decode().split()
        body = fh.read()
    fields = dict(item.split("=", 1) for item in header)
    alphabet = Alphabet.parse(fields["alphabet"])
    n = int(fields["n"])
    if len(body) != n:
        raise ValueError(f"word file declares n={n} but holds {len(body)} symbols")
    return Word(body, alphabet)
