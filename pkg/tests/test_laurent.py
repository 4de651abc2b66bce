from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qdieudonne.errors import ContextError, NonInvertibleError, ParseError
from qdieudonne.laurent import LaurentPoly, ParamSpace, Q_SPACE, qpoly

TWO = ParamSpace(("l", "p12"))
q_sym = sympy.Symbol("q")


def as_sympy(p):
    return sympy.sympify(str(p).replace("^", "**"), locals={"q": q_sym})


laurent = st.dictionaries(
    st.tuples(st.integers(-3, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4,
).map(lambda d: LaurentPoly(Q_SPACE, d))


@pytest.mark.parametrize("text,rendered", [
    ("q^-1 - q", "q^-1 - q"),
    ("(q - q^-1)^2", "q^-2 - 2 + q^2"),
    ("1/2*q^-2 + 3", "1/2*q^-2 + 3"),
    ("0", "0"),
    ("-q", "-q"),
])
def test_render(text, rendered):
    assert str(qpoly(text)) == rendered


def test_render_two_parameters():
    p = LaurentPoly.parse("-p12^-1 + l*p12^-1", TWO)
    assert str(p) == "-p12^-1 + l*p12^-1"


@given(laurent, laurent)
def test_arithmetic_matches_sympy(a, b):
    assert sympy.simplify(as_sympy(a * b) - as_sympy(a) * as_sympy(b)) == 0
    assert sympy.simplify(as_sympy(a - b) - (as_sympy(a) - as_sympy(b))) == 0


@settings(max_examples=60)
@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == LaurentPoly.zero(Q_SPACE)


@given(laurent)
def test_parse_render_roundtrip(a):
    assert qpoly(str(a)) == a


def test_monomial_inverse():
    assert qpoly("-2*q^3").inverse() == qpoly("-1/2*q^-3")
    assert qpoly("q") ** -2 == qpoly("q^-2")
    with pytest.raises(NonInvertibleError):
        qpoly("1 + q").inverse()


@pytest.mark.parametrize("bad", ["", "q^", "q +", "(q", "r", "q^-x"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        qpoly(bad)


def test_negative_power_of_non_monomial_is_a_parse_error():
    with pytest.raises(ParseError):
        qpoly("(1 + q)^-1")


def test_specialize_and_evaluate():
    p = LaurentPoly.parse("l*p12 - l^-1", TWO)
    bindings = {"l": qpoly("q"), "p12": qpoly("q^-1")}
    assert p.specialize(bindings, Q_SPACE) == qpoly("1 - q^-1")
    assert qpoly("q - q^-1").evaluate({"q": 2}) == Fraction(3, 2)
    with pytest.raises(ContextError):
        p.specialize({"l": qpoly("q")}, Q_SPACE)
    with pytest.raises(NonInvertibleError):
        p.specialize({"l": qpoly("1 + q"), "p12": 1}, Q_SPACE)


def test_mixing_spaces_is_refused():
    with pytest.raises((ContextError, TypeError)):
        qpoly("q") + LaurentPoly.parse("l", TWO)


def test_bad_parameter_space():
    with pytest.raises(ValueError):
        ParamSpace(("q", "q"))
