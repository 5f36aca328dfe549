import sys
from fractions import Fraction

import pytest

from qrquasi.corpus import get_example


@pytest.fixture(scope="session")
def corpus():
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = get_example(name)
        return cache[name]

    return load


def F(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
