from stringpred import corpus


def test_expansions_are_deep_enough():
    for cf in corpus.CONTINUED_FRACTIONS.values():
        assert cf.depth >= 8
        assert cf.convergent().denominator > corpus.LONG + 2


def test_random_words_are_seeded():
    first = corpus.random_words(20, 64)
    assert first == corpus.random_words(20, 64)
    assert first != corpus.random_words(20, 64, seed=corpus.CORPUS_SEED + 1)
    assert all(1 <= len(w) <= 64 for _, w in first)


def test_corpus_composition():
    names = [name for name, _ in corpus.full_corpus()]
    assert len(names) == len(set(names))
    assert sum(n.startswith("random-") for n in names) == 200
    assert sum(n.startswith("characteristic-") for n in names) == 5
    assert all(len(w) <= 12 for _, w in corpus.short_words())
