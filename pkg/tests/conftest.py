from __future__ import annotations

import os
from functools import lru_cache

import hypothesis
import pytest

from fusionforge import fixtures

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=8, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=300, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# extensions and cosets are pure functions of their inputs, so build each once per session
@lru_cache(maxsize=None)
def _ext(name: str):
    return {
        "free-fermion": fixtures.free_fermion,
        "bp": fixtures.bp,
        "wrong-stat": fixtures.wrong_stat,
        "n2-even-1": lambda: fixtures.n2_even_extension(1),
        "n2-even-2": lambda: fixtures.n2_even_extension(2),
    }[name]()


@pytest.fixture(scope="session")
def ext():
    return _ext


@pytest.fixture(scope="session")
def free_fermion():
    return _ext("free-fermion")


@pytest.fixture(scope="session")
def bp():
    return _ext("bp")


@pytest.fixture(scope="session")
def wrong_stat():
    return _ext("wrong-stat")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
