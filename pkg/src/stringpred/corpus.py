"""Fixed, seeded word corpus shared by the verify suites and the acceptance tests."""

from __future__ import annotations

import random

from .core import BINARY, Word
from .generators import (
    FIBONACCI_MORPHISM,
    PERIOD_DOUBLING_MORPHISM,
    QUADRATIC_MORPHISM,
    ContinuedFraction,
    characteristic_direct,
    fibonacci_word,
    morphic_prefix,
    power_block_word,
    thue_morse,
)

CORPUS_SEED = 20240611
LONG = 10_000

# every expansion is deep enough that its last convergent has denominator > LONG + 2
CONTINUED_FRACTIONS = {
    "golden": ContinuedFraction([1] * 25),
    "cf-2311": ContinuedFraction([2, 3, 1, 1] + [1] * 22),
    "pi": ContinuedFraction([7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14]),
    "silver": ContinuedFraction([2] * 16),
    "e": ContinuedFraction([1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, 1, 1, 10]),
}


def thue_morse_words(max_exp: int = 14) -> list[tuple[str, Word]]:
    return [(f"thue-morse-2^{j}", thue_morse(2**j)) for j in range(max_exp + 1)]


def fibonacci_words() -> list[tuple[str, Word]]:
    return [(f"fibonacci-{n}", fibonacci_word(n)) for n in (34, 100, 1000, LONG)]


def power_block_words(max_k: int = 3) -> list[tuple[str, Word]]:
    return [(f"power-block-{k}", power_block_word(k)) for k in range(max_k + 1)]


def characteristic_words(n: int = LONG) -> list[tuple[str, Word]]:
    return [(f"characteristic-{name}", characteristic_direct(cf, n)) for name, cf in CONTINUED_FRACTIONS.items()]


def morphic_words(n: int = LONG) -> list[tuple[str, Word]]:
    return [
        ("morphic-fibonacci", morphic_prefix(FIBONACCI_MORPHISM, "0", n)),
        ("morphic-period-doubling", morphic_prefix(PERIOD_DOUBLING_MORPHISM, "0", n)),
        ("morphic-quadratic", morphic_prefix(QUADRATIC_MORPHISM, "a", n)),
    ]


def random_words(count: int = 200, max_len: int = 256, seed: int = CORPUS_SEED, min_len: int = 1):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(min_len, max_len)
        out.append((f"random-{i}", Word(bytes(rng.getrandbits(1) for _ in range(n)), BINARY)))
    return out


def full_corpus() -> list[tuple[str, Word]]:
    return (
        thue_morse_words()
        + fibonacci_words()
        + power_block_words()
        + characteristic_words()
        + morphic_words()
        + random_words()
    )


def short_words(max_len: int = 12) -> list[tuple[str, Word]]:
    """Corpus members of length at most ``max_len`` plus short prefixes of the structured families."""
    picked = [(name, w) for name, w in full_corpus() if len(w) <= max_len]
    picked += [
        (f"fibonacci-{max_len}", fibonacci_word(max_len)),
        (f"thue-morse-{max_len}", thue_morse(max_len)),
        (f"characteristic-golden-{max_len}", characteristic_direct(CONTINUED_FRACTIONS["golden"], max_len)),
    ]
    return picked
