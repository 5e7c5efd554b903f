# -*- coding: utf-8 -*-
import pytest
from sympy import QQ, QQ_I

from core.exceptions import InputError
from core.scalars import (conjugate, field_from_tag, field_tag, format_scalar, is_real, parse_rational,
                          parse_scalar, sign)


def test_parse_rational_literals():
    assert parse_rational("3/4") == QQ(3, 4)
    assert parse_rational("-2") == QQ(-2)
    assert parse_rational(5) == QQ(5)


@pytest.mark.parametrize("text", ["1.5", "abc", "", "1/0"])
def test_parse_rational_rejects_bad_literals(text):
    with pytest.raises(InputError):
        parse_rational(text)


@pytest.mark.parametrize("text, expected", [
    ("i", QQ_I(0, 1)),
    ("-i", QQ_I(0, -1)),
    ("3/2 i", QQ_I(0, QQ(3, 2))),
    ("1-2/3 i", QQ_I(1, QQ(-2, 3))),
    ("7", QQ_I(7, 0)),
])
def test_parse_gaussian_rationals(text, expected):
    assert parse_scalar(text, QQ_I) == expected


def test_format_scalar_is_canonical():
    assert format_scalar(QQ(6, 4)) == "3/2"
    assert format_scalar(QQ(-4, 2)) == "-2"
    assert format_scalar(QQ_I(1, -1), QQ_I) == "1-i"
    assert format_scalar(QQ_I(0, QQ(1, 2)), QQ_I) == "1/2 i"
    assert parse_scalar(format_scalar(QQ_I(QQ(2, 3), 5), QQ_I), QQ_I) == QQ_I(QQ(2, 3), 5)


def test_field_tags_and_helpers():
    assert field_from_tag("Q(i)") == QQ_I
    assert field_tag(QQ) == "Q"
    with pytest.raises(InputError):
        field_from_tag("R")
    assert conjugate(QQ_I(1, 2), QQ_I) == QQ_I(1, -2)
    assert not is_real(QQ_I(0, 1), QQ_I)
    assert sign(QQ(-3, 7)) == -1 and sign(QQ(0)) == 0
