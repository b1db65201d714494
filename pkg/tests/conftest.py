import random
from fractions import Fraction

import pytest

from multiset_metrics import discrete_space, euclidean_space, kendall_tau_space, table_space
from multiset_metrics.checks import random_table_space


@pytest.fixture
def two_point():
    """x, y at distance 1 with M = 1."""
    return table_space([[0, 1], [1, 0]], 1, label="two", elements=["x", "y"])


@pytest.fixture
def line3():
    """x, y, z on a line at 0, 1, 2 with M = 1 (theta = 2)."""
    return table_space([[0, 1, 2], [1, 0, 1], [2, 1, 0]], 1, label="line3", elements=["x", "y", "z"])


def rational_spaces(seed=0):
    """A handful of exact spaces at theta = 2 (the default M)."""
    rng = random.Random(seed)
    return [
        discrete_space(3, 1),
        kendall_tau_space(3),
        random_table_space(rng, 4, label="rt4"),
        random_table_space(rng, 5, label="rt5"),
        table_space([[0, 1, 2], [1, 0, 1], [2, 1, 0]], label="line3"),
    ]


@pytest.fixture
def spaces():
    return rational_spaces()


@pytest.fixture
def euclid5():
    return euclidean_space([(0, 0), (3, 4), (1, 1), (-2, 5), (0.5, -1.5)], label="euclid5")


def frac(s):
    return Fraction(s)


# -- acceptance reporting ---------------------------------------------------

import time

_lines = pytest.StashKey[list]()
_start = pytest.StashKey[float]()


def pytest_sessionstart(session):
    session.config.stash[_start] = time.perf_counter()
    session.config.stash[_lines] = []


def pytest_collection_modifyitems(session, config, items):
    # the wall-clock criterion has to see every other test finish first
    last = [it for it in items if "suite_runtime" in it.name]
    items[:] = [it for it in items if it not in last] + last


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_lines, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
    elapsed = time.perf_counter() - config.stash.get(_start, time.perf_counter())
    terminalreporter.write_line(f"session wall time {elapsed:.1f} s")


@pytest.fixture
def criterion(request):
    """Record and print a one-line verdict, then assert it."""

    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} {number}: {title}" + (f" ({detail})" if detail else "")
        request.config.stash[_lines].append(line)
        print(line)
        assert ok, line

    return record


@pytest.fixture
def session_elapsed(request):
    return lambda: time.perf_counter() - request.config.stash[_start]
