import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.lie_algebra import builtin_group
from src.calculus.leibniz import leibniz_check, leibniz_regime, rumin_wedge
from src.cli.form_parser import parse_form
from src.errors import DegreeOverflow, NotHeisenberg, NotRumin
from tests.strategies import rumin_forms


@pytest.mark.parametrize("m, h, k, expected", [
    (1, 0, 0, True),
    (1, 0, 1, False),
    (1, 1, 1, False),
    (1, 0, 2, True),
    (2, 1, 0, True),
    (2, 1, 1, False),
    (2, 3, 1, True),
])
def test_regime(m, h, k, expected):
    assert leibniz_regime(m, h, k) is expected


def test_functions_multiply(h3, form):
    report = leibniz_check(h3, form("x1*x3"), form("x2**2"))
    assert report.guaranteed and report.holds


def test_function_times_top_rumin_form(h3, form):
    report = leibniz_check(h3, form("x1"), form("x2*t[1]^t[3]"))
    assert report.guaranteed
    assert report.holds


def test_degrees_outside_regime_are_flagged(h3, form):
    report = leibniz_check(h3, form("x1"), form("t[2]"))
    assert not report.guaranteed
    assert rumin_wedge(h3, form("x1"), form("t[2]")).representative_dependent


def test_requires_heisenberg(engel):
    with pytest.raises(NotHeisenberg):
        leibniz_check(engel, parse_form("x1", engel), parse_form("x2", engel))


def test_degree_overflow(h3, form):
    with pytest.raises(DegreeOverflow):
        leibniz_check(h3, form("t[1]^t[3]"), form("t[2]^t[3]"))


def test_inputs_must_be_rumin(h3, form):
    with pytest.raises(NotRumin):
        leibniz_check(h3, form("x1"), form("t[3]"))


def regime_pairs(m: int, n: int):
    return [(h, k) for h in range(n) for k in range(n) if h + k < n and leibniz_regime(m, h, k)]


@pytest.mark.parametrize("m", [1, pytest.param(2, marks=pytest.mark.slow)])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_leibniz_holds_inside_the_regime(m, data):
    g = builtin_group('heisenberg', m)
    h, k = data.draw(st.sampled_from(regime_pairs(m, g.n)))
    a, b = data.draw(rumin_forms(g, h)), data.draw(rumin_forms(g, k))
    report = leibniz_check(g, a, b)
    assert report.guaranteed
    assert report.holds, report.residual.to_text()


def test_function_times_middle_degree_form_breaks_leibniz(h3, form):
    # h = 0, k = m on H3
    report = leibniz_check(h3, form("x3"), form("t[1]"))
    assert not report.guaranteed
    assert not report.holds
