import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from semitop.semigroup import Semigroup, parse_transformations  # noqa: E402
from semitop.words import parse_presentation  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"

T3_TEXT = """\
degree: 3
s: [2,1,3]
c: [2,3,1]
e12: [1,1,3]
"""

GROUPS = {
    "Z2": ("monoid\ngenerators: a\na a = 1", 2),
    "Z4": ("monoid\ngenerators: a\na a a a = 1", 4),
    "S3": ("monoid\ngenerators: s t\ns s = 1\nt t t = 1\ns t s = t t", 6),
    "V4": ("monoid\ngenerators: a b\na a = 1\nb b = 1\na b = b a", 4),
}


def cyclic_presentation(n):
    return parse_presentation("monoid\ngenerators: a\n" + " ".join(["a"] * n) + " = 1")


@pytest.fixture(scope="session")
def t3():
    return parse_transformations(T3_TEXT)


@pytest.fixture(scope="session")
def bicyclic_p():
    return parse_presentation("monoid\ngenerators: b c\nb c = 1")


@pytest.fixture(scope="session")
def bicyclic(bicyclic_p):
    return Semigroup.from_presentation(bicyclic_p)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
