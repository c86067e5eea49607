from functools import lru_cache

import pytest

from sandpile import ModelKind, bfs_reachable, fixed_points_of, parse_config


@lru_cache(maxsize=None)
def diagram(n, model="psspm"):
    return bfs_reachable(n, ModelKind(model))


@lru_cache(maxsize=None)
def oracle_fixed(n, model="psspm"):
    return tuple(fixed_points_of(diagram(n, model)))


def C(text):
    return parse_config(text)


@pytest.fixture
def psspm():
    return diagram


@pytest.fixture
def sspm():
    return lambda n: diagram(n, "sspm")


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k}. {line}")
