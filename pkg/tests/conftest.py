import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from stringpred.core import Alphabet, Word

settings.register_profile(
    "repo", deadline=None, max_examples=120, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

ALPHABETS = {size: Alphabet(tuple("abcd"[:size])) for size in (1, 2, 3, 4)}


@st.composite
def words(draw, min_size=1, max_size=40, sigma=None):
    size = draw(st.integers(2, 3)) if sigma is None else sigma
    data = draw(st.lists(st.integers(0, size - 1), min_size=min_size, max_size=max_size))
    return Word(bytes(data), ALPHABETS[size])


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
