"""Collects one verdict line per acceptance criterion for the terminal summary."""

import functools
import time

RESULTS: dict[int, str] = {}


def criterion(number: int, title: str):
    """Wrap a check returning (ok, detail); record PASS/FAIL even when it raises."""

    def wrap(check):
        @functools.wraps(check)
        def test(*args, **kwargs):
            start = time.perf_counter()
            try:
                ok, detail = check(*args, **kwargs)
            except Exception as exc:
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - start
            line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail} [{elapsed:.1f}s]"
            RESULTS[number] = line
            print(line)
            assert ok, line

        return test

    return wrap
