import contextlib
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pfdecomp.exactla import mat  # noqa: E402
from pfdecomp.persmod import PersistenceModule  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@contextlib.contextmanager
def criterion(name):
    """Record one acceptance criterion as PASS/FAIL for the terminal summary."""
    detail = {"text": ""}
    try:
        yield detail
    except BaseException:
        _ACCEPTANCE.append((name, False, detail["text"]))
        raise
    _ACCEPTANCE.append((name, True, detail["text"]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, text in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{text}]" if text else ""))


def make_m1():
    return PersistenceModule(2, (1, 2, 1), (mat([[1], [0]], 2), mat([[0, 1]], 2)))


@pytest.fixture
def m1():
    return make_m1()


@st.composite
def modules(draw, max_n=5, max_dim=3, primes=(2, 3, 5)):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_n))
    dims = draw(st.lists(st.integers(0, max_dim), min_size=n, max_size=n))
    steps = []
    for i in range(n - 1):
        flat = draw(st.lists(st.integers(0, p - 1), min_size=dims[i] * dims[i + 1], max_size=dims[i] * dims[i + 1]))
        steps.append(np.array(flat, dtype=np.int64).reshape(dims[i + 1], dims[i]))
    return PersistenceModule(p, tuple(dims), tuple(steps))


@st.composite
def matrices(draw, p, max_rows=4, max_cols=4):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(flat, dtype=np.int64).reshape(r, c)
