from contextlib import contextmanager

import pytest
from hypothesis import strategies as st

from provclose.freeword import Word

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def all_reduced_words(maxlen: int, rank: int = 2, minlen: int = 1) -> list[Word]:
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    out, frontier = [], [()]
    for length in range(1, maxlen + 1):
        frontier = [seq + (x,) for seq in frontier for x in letters
                    if not seq or seq[-1] != -x]
        if length >= minlen:
            out.extend(Word(seq, rank) for seq in frontier)
    return out


def raw_letters(rank=3, max_size=12):
    return st.lists(st.integers(1, rank).flatmap(lambda i: st.sampled_from([i, -i])),
                    max_size=max_size)


def words(rank=3, max_size=12):
    return raw_letters(rank, max_size).map(lambda seq: Word(tuple(seq), rank))


def _record(name, passed, detail=""):
    ACCEPTANCE_RESULTS[name] = (passed, detail)
    print(f"[{'PASS' if passed else 'FAIL'}] {name} {detail}")


@pytest.fixture
def criterion():
    """``with criterion(name) as info:``; set ``info["detail"]`` for the summary line."""
    @contextmanager
    def run(name):
        info = {"detail": ""}
        try:
            yield info
        except Exception as exc:
            _record(name, False, f"{type(exc).__name__}: {str(exc)[:300]}")
            raise
        _record(name, True, info["detail"])
    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
