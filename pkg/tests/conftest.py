from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import settings

from twistorlines.geometry import LineP3, ProjPoint3
from twistorlines.polyring import PolyForm, monomials
from twistorlines.scalars import GR

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def rationals(height=10):
    return st.builds(Fraction, st.integers(-height, height), st.integers(1, height))


def gaussians(height=10):
    return st.builds(GR, rationals(height), rationals(height))


def nonzero_gaussians(height=10):
    return gaussians(height).filter(lambda z: z != 0)


@st.composite
def points(draw, height=10):
    z = draw(st.tuples(*[gaussians(height)] * 4).filter(lambda z: any(x != 0 for x in z)))
    return ProjPoint3(z)


@st.composite
def lines(draw, height=10):
    a = draw(points(height))
    b = draw(points(height).filter(lambda b: b != a))
    return LineP3(a, b)


@st.composite
def forms(draw, d, height=5):
    n = len(monomials(d))
    return PolyForm(d, tuple(draw(st.lists(gaussians(height), min_size=n, max_size=n))))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


@pytest.fixture
def fermat():
    return PolyForm.from_dict(3, {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1})


@pytest.fixture
def segre():
    return PolyForm.from_dict(2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
