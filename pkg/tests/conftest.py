from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings

from ktiling.fixtures import FIXTURES, fixture
from ktiling.lattice import TranslationMultiset
from ktiling.polytope import build_polytope

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

F = Fraction


def square(lo=0, hi=1):
    return build_polytope([(lo, lo), (hi, lo), (hi, hi), (lo, hi)])


@pytest.fixture(scope="session")
def oct7():
    return fixture("oct7").polytope()


@pytest.fixture(scope="session")
def cell24():
    return fixture("cell24").polytope()


@pytest.fixture(scope="session")
def z2():
    return TranslationMultiset.integer_lattice(2)


@pytest.fixture(scope="session")
def z3():
    return TranslationMultiset.integer_lattice(3)


TILERS = [f for f in FIXTURES if f.tiles]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
