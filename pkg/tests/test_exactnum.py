import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qappell.exactnum import as_rational, format_rational, parse_rational, qfact, qnum, qparam, qpochhammer

from oracles import poch_naive, qfact_closed, qnum_closed

qs = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda q: q not in (0, 1, -1))


@pytest.mark.parametrize("n, q, expected", [(0, 2, 0), (1, Fraction(5, 3), 1), (3, 2, 7)])
def test_qnum_examples(n, q, expected):
    assert qnum(n, q) == expected


@pytest.mark.parametrize("n, q, expected", [(0, 2, 1), (2, 2, 3), (3, 2, 21)])
def test_qfact_examples(n, q, expected):
    assert qfact(n, q) == expected


@pytest.mark.parametrize(
    "z, q, k, expected",
    [(7, 2, 0, 1), (Fraction(1, 4), 2, 3, 0), (2, 3, 2, 5)],
)
def test_qpochhammer_examples(z, q, k, expected):
    assert qpochhammer(z, q, k) == expected


@pytest.mark.parametrize("q", [0, 1, -1, "1", "-1/1"])
def test_qparam_rejects_degenerate_bases(q):
    with pytest.raises(ValueError):
        qparam(q)


def test_float_inputs_are_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(st.integers(0, 25), qs)
def test_qnum_matches_closed_form(n, q):
    assert qnum(n, q) == qnum_closed(n, q)


@given(st.integers(1, 25), qs)
def test_qnum_shift_identity(n, q):
    assert qnum(n, q) == 1 + q * qnum(n - 1, q)


@given(st.integers(0, 12), qs)
def test_qfact_matches_closed_form_and_is_nonzero(n, q):
    value = qfact(n, q)
    assert value == qfact_closed(n, q)
    assert value != 0


@given(st.fractions(max_denominator=9), qs, st.integers(0, 10))
def test_qpochhammer_step(z, q, k):
    assert qpochhammer(z, q, k + 1) == qpochhammer(z, q, k) * (1 - z * q ** k)
    assert qpochhammer(z, q, k) == poch_naive(z, q, k)


@given(st.integers(0, 8), st.integers(1, 6), qs)
def test_qpochhammer_terminates(n, extra, q):
    assert qpochhammer(q ** -n, q, n + extra) == 0


def test_canonical_form_against_cross_multiplication():
    rng = random.Random(7)
    for _ in range(1000):
        a, c = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        b, d = rng.randint(1, 10**6), rng.randint(1, 10**6)
        got = Fraction(a, b) + Fraction(c, d)
        num, den = a * d + c * b, b * d
        assert got.denominator > 0
        assert got.numerator * den == num * got.denominator
        assert math.gcd(abs(got.numerator), got.denominator) == 1


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-3/2", Fraction(-3, 2)), ("+4/6", Fraction(2, 3)), (" 7 / 3 ", Fraction(7, 3))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "a/b", "1/0", "", "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
def test_format_parse_roundtrip(r):
    assert parse_rational(format_rational(r)) == r
