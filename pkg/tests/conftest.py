import functools
from pathlib import Path

import pytest

from liehopf.dpoly import PolyDifferentialComplex
from liehopf.lie_core import CORPUS, load_pair

DATA = Path(__file__).parent / "data"


@functools.lru_cache(maxsize=None)
def complex_for(name: str) -> PolyDifferentialComplex:
    # shared across tests: the straightening and d memos are the expensive part
    return PolyDifferentialComplex(load_pair(name))


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param


@pytest.fixture
def cx(corpus_name):
    return complex_for(corpus_name)


@pytest.fixture
def sl2():
    return complex_for("sl2_borel")


@pytest.fixture
def heis():
    return complex_for("heisenberg_center")


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria (tolerance 0)")
        for i in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[i])
