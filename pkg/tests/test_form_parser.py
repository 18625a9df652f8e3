import logging

import pytest

from src.cli.form_parser import parse_form, parse_invariant_form, tokenize
from src.errors import FormParseError
from src.forms.exterior import InvariantForm


def test_tokens_carry_positions():
    tokens = tokenize("x2*t[1] - 1/2")
    assert [(token.kind, token.position) for token in tokens] == [
        ('x', 0), ('op', 2), ('t', 3), ('op', 4), ('number', 5), ('op', 6),
        ('op', 8), ('number', 10), ('op', 11), ('number', 12), ('end', 13),
    ]


def test_wedge_of_covectors(h3):
    a = parse_form("t[1]^t[2]", h3)
    assert a.degree == 2
    assert a.to_invariant() == InvariantForm.monomial(3, (0, 1))


def test_star_and_caret_agree(form):
    assert form("t[1]*t[2]") == form("t[1]^t[2]")
    assert form("x1*x2") == form("x2^x1")


@pytest.mark.parametrize("text", [
    "x2*t[1] - 1/2*t[3]",
    "1/2*x1**2*x3*t[1]^t[3] - t[2]^t[3]",
    "x1*t[1]^t[2]^t[3]",
])
def test_text_round_trip(form, text):
    assert form(form(text).to_text()) == form(text)


def test_parentheses_distribute(form):
    assert form("(x1 + x2)*t[1]") == form("x1*t[1] + x2*t[1]")
    assert form("-(t[1] - t[2])") == form("t[2] - t[1]")


def test_powers_and_division(form):
    assert form("x1**3/3") == form("1/3*x1*x1*x1")
    assert form("2.5*x3") == form("5/2*x3")


def test_vanishing_wedge_warns(form, caplog):
    with caplog.at_level(logging.WARNING, logger='RuminCalc'):
        result = form("t[1]^t[1]")
    assert result.is_zero()
    assert result.degree == 2
    assert any("vanishes" in record.getMessage() for record in caplog.records)


@pytest.mark.parametrize("text, position", [
    ("t[4]", 2),
    ("x1 + t[1]", 3),
    ("2*(x1", 5),
    ("t[1]/x1", 4),
    ("x1 $ 2", 3),
    ("", 0),
    ("x10", 0),
    ("t[1]^t[2]^t[3]^t[1]", 14),
    ("t[1]**2", 4),
    ("x1 x2", 3),
])
def test_errors_point_at_the_offending_token(form, text, position):
    with pytest.raises(FormParseError) as info:
        form(text)
    assert info.value.position == position
    assert info.value.pointer().endswith(' ' * position + '^')


def test_error_messages_name_what_was_found(form):
    with pytest.raises(FormParseError, match="found 'end of input'"):
        form("2*(x1")
    with pytest.raises(FormParseError, match="cannot add a 0-form and a 1-form"):
        form("x1 + t[1]")


def test_invariant_forms_need_constant_coefficients(h3):
    assert parse_invariant_form("2*t[1] - t[3]", h3) == InvariantForm.monomial(3, (0,), 2) - InvariantForm.monomial(3, (2,))
    with pytest.raises(FormParseError, match="constant coefficients"):
        parse_invariant_form("x1*t[1]", h3)
