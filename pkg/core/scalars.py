# -*- coding: utf-8 -*-
"""
Exact scalar fields: the rationals QQ and the Gaussian rationals QQ_I.

Scalars are sympy domain elements. Text form is ``p/q`` for rationals and
``a+b i`` for Gaussian rationals (``i``, ``-i``, ``3/2 i`` and ``1-2/3 i`` all
parse).
"""

import re
from fractions import Fraction
from typing import Any, Union

from sympy import QQ, QQ_I
from sympy.polys.domains.domain import Domain

from core.exceptions import InputError

FIELD_TAGS = {"Q": QQ, "Q(i)": QQ_I}

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^{_RATIONAL}$")


def field_from_tag(tag: str) -> Domain:
    try:
        return FIELD_TAGS[tag]
    except KeyError:
        raise InputError(f"unknown scalar field {tag!r}; expected one of {sorted(FIELD_TAGS)}")


def field_tag(field: Domain) -> str:
    return "Q(i)" if field == QQ_I else "Q"


def parse_rational(text: Union[str, int]):
    """解析 p/q 形式的有理数"""
    if isinstance(text, int) and not isinstance(text, bool):
        return QQ(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise InputError(f"not a rational literal: {text!r}")
    try:
        value = Fraction(text.strip())
    except ZeroDivisionError:
        raise InputError(f"zero denominator in {text!r}")
    return QQ(value.numerator, value.denominator)


def parse_scalar(text: Union[str, int], field: Domain):
    """解析标量（有理数或高斯有理数）"""
    if field != QQ_I:
        return parse_rational(text)
    if isinstance(text, int) and not isinstance(text, bool):
        return QQ_I(text, 0)
    if not isinstance(text, str):
        raise InputError(f"not a scalar literal: {text!r}")
    compact = text.replace(" ", "")
    if not compact.endswith("i"):
        return QQ_I(parse_rational(compact), 0)
    body = compact[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        real_text, imag_text = body[:split], body[split:]
    else:
        real_text, imag_text = "0", body
    if imag_text in ("", "+"):
        imag = QQ(1)
    elif imag_text == "-":
        imag = QQ(-1)
    else:
        imag = parse_rational(imag_text)
    return QQ_I(parse_rational(real_text), imag)


def _format_rational(value) -> str:
    value = QQ.convert(value)
    numerator, denominator = int(QQ.numer(value)), int(QQ.denom(value))
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def format_scalar(value: Any, field: Domain = QQ) -> str:
    """标量的规范文本形式"""
    if field != QQ_I:
        return _format_rational(value)
    value = QQ_I.convert(value)
    real, imag = value.x, value.y
    if not imag:
        return _format_rational(real)
    if imag == 1:
        imag_text = "i"
    elif imag == -1:
        imag_text = "-i"
    else:
        imag_text = f"{_format_rational(imag)} i"
    if not real:
        return imag_text
    if imag_text.startswith("-"):
        return f"{_format_rational(real)}{imag_text}"
    return f"{_format_rational(real)}+{imag_text}"


def conjugate(value: Any, field: Domain):
    if field == QQ_I:
        value = QQ_I.convert(value)
        return QQ_I(value.x, -value.y)
    return value


def real_part(value: Any, field: Domain):
    if field == QQ_I:
        return QQ_I.convert(value).x
    return QQ.convert(value)


def is_real(value: Any, field: Domain) -> bool:
    return field != QQ_I or not QQ_I.convert(value).y


def imaginary_unit():
    return QQ_I(0, 1)


def sign(value) -> int:
    """有理数的符号"""
    if not value:
        return 0
    return 1 if value > 0 else -1


def to_float(value, field: Domain = QQ) -> complex:
    if field == QQ_I:
        value = QQ_I.convert(value)
        return complex(float(value.x), float(value.y))
    return float(value)
