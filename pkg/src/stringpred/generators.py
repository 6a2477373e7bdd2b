"""Deterministic generators for the test-bed sequence families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import AB, BINARY, Alphabet, Word

LENGTH_CAP = 1 << 22


class GeneratorError(ValueError):
    pass


def _check_length(n: int, cap: int = LENGTH_CAP) -> None:
    if n < 1:
        raise GeneratorError(f"length must be >= 1, got {n}")
    if n > cap:
        raise GeneratorError(f"length {n} exceeds cap {cap}")


def thue_morse(n: int) -> Word:
    """Prefix of length n of the Thue-Morse word, built by complement doubling."""
    _check_length(n)
    buf = bytearray(b"\x00")
    flip = bytes.maketrans(b"\x00\x01", b"\x01\x00")
    while len(buf) < n:
        buf += buf.translate(flip)
    return Word(bytes(buf[:n]), BINARY)


def fibonacci_word(n: int) -> Word:
    """Prefix of the Fibonacci word via u_{j+2} = u_{j+1} u_j."""
    _check_length(n)
    prev, cur = b"\x00", b"\x00\x01"
    if n == 1:
        return Word(prev, BINARY)
    while len(cur) < n:
        prev, cur = cur, cur + prev
    return Word(cur[:n], BINARY)


def power_block_word(k: int, cap: int = LENGTH_CAP) -> Word:
    """(a^m b^m)^m with m = 2**k, over the alphabet ``ab``; length 2**(2k+1)."""
    if k < 0:
        raise GeneratorError("k must be >= 0")
    m = 1 << k
    if 2 * m * m > cap:
        raise GeneratorError(f"power_block_word({k}) has length {2 * m * m} > cap {cap}")
    return Word((b"\x00" * m + b"\x01" * m) * m, AB)


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients a_1, a_2, ... of theta = [0; a_1, a_2, ...]."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(a) for a in self.coefficients))
        if not self.coefficients:
            raise GeneratorError("continued fraction needs at least one coefficient")
        if any(a < 1 for a in self.coefficients):
            raise GeneratorError("partial quotients must be >= 1")

    @property
    def depth(self) -> int:
        return len(self.coefficients)

    def block_lengths(self) -> list[int]:
        """q_0 .. q_depth with q_0 = 1, q_1 = a_1, q_{j+1} = a_{j+1} q_j + q_{j-1}."""
        q = [1, self.coefficients[0]]
        for a in self.coefficients[1:]:
            q.append(a * q[-1] + q[-2])
        return q

    def convergent(self, depth: int | None = None) -> Fraction:
        """[0; a_1, ..., a_depth] as an exact fraction (denominator q_depth)."""
        coeffs = self.coefficients[: self.depth if depth is None else depth]
        value = Fraction(0)
        for a in reversed(coeffs):
            value = 1 / (a + value)
        return value


def characteristic_direct(theta: Fraction | ContinuedFraction, n: int) -> Word:
    """y[t] = floor((t+2) theta) - floor((t+1) theta) for t < n, in exact integers.

    A continued fraction is replaced by its deepest convergent p/q, which must
    satisfy q > n + 2 so that no floor lands on the boundary for t < n.
    """
    _check_length(n)
    if isinstance(theta, ContinuedFraction):
        frac = theta.convergent()
        if frac.denominator <= n + 2:
            raise GeneratorError(
                f"continued fraction too shallow: convergent denominator {frac.denominator} <= n+2 = {n + 2}"
            )
    else:
        frac = Fraction(theta)
    if not 0 < frac < 1:
        raise GeneratorError(f"theta must lie in (0, 1), got {frac}")
    p, q = frac.numerator, frac.denominator
    out = bytes(((t + 2) * p) // q - ((t + 1) * p) // q for t in range(n))
    return Word(out, BINARY)


def characteristic_blocks(cf: ContinuedFraction, j: int) -> tuple[Word, int]:
    """Standard block s_j and its length q_j.

    s_0 = 0, s_1 = 0^(a_1 - 1) 1, s_{i+1} = s_i^(a_{i+1}) s_{i-1}.
    """
    if not 0 <= j <= cf.depth:
        raise GeneratorError(f"level {j} exceeds continued fraction depth {cf.depth}")
    a = cf.coefficients
    prev, cur = b"\x00", b"\x00" * (a[0] - 1) + b"\x01"
    if j == 0:
        return Word(prev, BINARY), 1
    for i in range(1, j):
        prev, cur = cur, cur * a[i] + prev
        if len(cur) > LENGTH_CAP:
            raise GeneratorError(f"block s_{i + 1} exceeds length cap")
    return Word(cur, BINARY), len(cur)


@dataclass(frozen=True)
class Morphism:
    """Non-erasing morphism on ``alphabet``; ``rules[c]`` is the image of symbol c."""

    alphabet: Alphabet
    rules: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.rules) != self.alphabet.size:
            raise GeneratorError("morphism must give an image for every symbol")
        for c, image in enumerate(self.rules):
            if not image:
                raise GeneratorError(f"image of {self.alphabet.token(c)!r} is empty (erasing)")
            if max(image) >= self.alphabet.size:
                raise GeneratorError("image uses a symbol outside the alphabet")

    @classmethod
    def from_strings(cls, rules: Mapping[str, str], alphabet: Alphabet | None = None) -> Morphism:
        """``Morphism.from_strings({"a": "ab", "b": "b"})`` with single-character symbols."""
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(rules)))
        images = tuple(bytes(alphabet.index(c) for c in rules[s]) for s in alphabet.symbols)
        return cls(alphabet, images)

    def apply(self, word: bytes) -> bytes:
        return b"".join(self.rules[c] for c in word)

    def is_prolongable(self, seed: int) -> bool:
        image = self.rules[seed]
        return len(image) >= 2 and image[0] == seed


def morphic_prefix(
    m: Morphism,
    seed: int | str,
    n: int,
    coding: Mapping[int, int] | Sequence[int] | None = None,
    target: Alphabet | None = None,
) -> Word:
    """Coding of h^omega(seed), first n symbols.

    ``coding`` maps source symbol indices to indices of ``target`` (identity
    onto the morphism's own alphabet when omitted).
    """
    _check_length(n)
    if isinstance(seed, str):
        seed = m.alphabet.index(seed)
    if not m.is_prolongable(seed):
        raise GeneratorError(
            f"morphism is not prolongable on {m.alphabet.token(seed)!r}: image {m.rules[seed]!r}"
        )
    # the fixed point satisfies w = h(w), so symbol i of w emits the next block of w
    word = bytearray(m.rules[seed])
    done = 1
    while len(word) < n:
        take = min(len(word) - done, n - len(word))
        if take <= 0:
            raise GeneratorError("seed orbit stopped growing before reaching the requested length")
        word += m.apply(word[done : done + take])
        done += take
    word = bytes(word[:n])
    if coding is None:
        return Word(word, target or m.alphabet)
    if target is None:
        raise GeneratorError("a coding needs a target alphabet")
    table = bytes(coding[c] for c in range(m.alphabet.size)).ljust(256, b"\x00")
    return Word(word.translate(table), target)


def growth_profile(m: Morphism, seed: int | str, iters: int) -> list[int]:
    """|h^i(seed)| for i = 1..iters from symbol-count vectors (no materialization)."""
    if isinstance(seed, str):
        seed = m.alphabet.index(seed)
    if iters < 1:
        raise GeneratorError("iters must be >= 1")
    sigma = m.alphabet.size
    images = [[image.count(c) for c in range(sigma)] for image in m.rules]
    counts = [0] * sigma
    counts[seed] = 1
    lengths = []
    for _ in range(iters):
        nxt = [0] * sigma
        for c, how_many in enumerate(counts):
            if how_many:
                for d, k in enumerate(images[c]):
                    nxt[d] += how_many * k
        counts = nxt
        lengths.append(sum(counts))
    return lengths


THUE_MORSE_MORPHISM = Morphism.from_strings({"0": "01", "1": "10"})
FIBONACCI_MORPHISM = Morphism.from_strings({"0": "01", "1": "0"})
PERIOD_DOUBLING_MORPHISM = Morphism.from_strings({"0": "01", "1": "00"})
QUADRATIC_MORPHISM = Morphism.from_strings({"a": "ab", "b": "bc", "c": "c"})
