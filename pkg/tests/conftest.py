import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qdirac.qscalar import QField, QValue, RationalFunction

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Q_SAMPLES = (0.5, 1.1, 2.0)
HALF = Fraction(1, 2)


@pytest.fixture(scope="session")
def exact():
    return QField.exact()


@pytest.fixture(params=Q_SAMPLES, ids=lambda q: f"q0={q}")
def numeric(request):
    return QField.numeric(request.param)


small_int = st.integers(-4, 4)


@st.composite
def laurent(draw, max_terms=3):
    coeffs = draw(st.dictionaries(st.integers(-3, 3), small_int, min_size=1, max_size=max_terms))
    return QValue.exact(RationalFunction.laurent(coeffs))


@st.composite
def qvalues(draw):
    """Random exact values: Laurent polynomials and their quotients."""
    num = draw(laurent())
    if draw(st.booleans()):
        den = draw(laurent())
        if not den.is_zero():
            return num * den.inverse()
    return num


half_integers = st.integers(0, 8).map(lambda n: Fraction(n, 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
