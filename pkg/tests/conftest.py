import pytest

from dualcx.complex import DeltaComplex, simplicial_closure
from dualcx.curves import CurveConfig, Entry


def C(name):
    return Entry.component(name)


def P(name):
    return Entry.point(name)


def word(spec):
    """'P1 C1 P2' -> entries; names starting with C are components."""
    return [C(t) if t.startswith("C") else P(t) for t in spec.split()]


@pytest.fixture
def filled_triangle():
    # vertices 0,1,2; edges 3=(0,1) 4=(0,2) 5=(1,2); face 6
    return simplicial_closure([(0, 1, 2)])


@pytest.fixture
def triangle_boundary():
    return simplicial_closure([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def banana():
    return DeltaComplex([(0, 0, []), (1, 0, []), (2, 1, [1, 0]), (3, 1, [1, 0])])


@pytest.fixture
def path_abc():
    # a=0, b=1, c=2, ab=3, bc=4
    return simplicial_closure([(0, 1), (1, 2)])


@pytest.fixture
def triangle_config():
    return CurveConfig(["C3", "C4", "C5"], {"P3": ["C3", "C4"], "P4": ["C4", "C5"], "P5": ["C5", "C3"]})


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
