import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qappell.exactnum import qnum
from qappell.qpoly import (
    QPoly,
    add,
    evaluate,
    from_json,
    from_terms,
    hahn_derivative,
    mul,
    qproduct_basis,
    scale,
    scale_arg,
    to_json,
    to_latex,
    to_terms,
)

from oracles import hahn_quotient, random_poly, random_rational

X = QPoly.x()
small = st.fractions(min_value=-20, max_value=20, max_denominator=6)
polys = st.lists(small, max_size=8).map(QPoly)
qs = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda q: q not in (0, 1, -1))


def test_ring_examples():
    assert mul(X, X) == QPoly([0, 0, 1])
    f = QPoly([3, 0, 2])
    assert add(f, QPoly.zero()) == f
    assert mul(X - 1, X + 1) == QPoly([-1, 0, 1])


def test_trailing_zeros_are_stripped():
    assert QPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert QPoly([0, 0]).is_zero()
    assert QPoly.zero().degree == -1


def test_zero_has_no_leading_coefficient():
    with pytest.raises(ValueError):
        QPoly.zero().leading


@pytest.mark.parametrize("f, x0, expected", [
    (QPoly([-1, 0, 1]), 1, 0),
    (QPoly([-1, 0, 1]), 3, 8),
    (QPoly.zero(), Fraction(5, 7), 0),
])
def test_eval_examples(f, x0, expected):
    assert evaluate(f, x0) == expected


@pytest.mark.parametrize("f, c, expected", [
    (QPoly([0, 1, 1]), 1, QPoly([0, 1, 1])),
    (QPoly([0, 0, 1]), 2, QPoly([0, 0, 4])),
    (QPoly([5]), Fraction(-3, 4), QPoly([5])),
])
def test_scale_arg_examples(f, c, expected):
    assert scale_arg(f, c) == expected


@pytest.mark.parametrize("f, expected", [
    (QPoly([5]), QPoly.zero()),
    (X, QPoly([1])),
    (QPoly([0, 0, 1]), QPoly([0, 3])),
])
def test_hahn_examples_at_q2(f, expected):
    assert hahn_derivative(f, 2) == expected


@pytest.mark.parametrize("k, expected", [
    (0, QPoly([1])),
    (1, QPoly([-1, 1])),
    (2, QPoly([2, -3, 1])),
])
def test_qproduct_basis_examples(k, expected):
    assert qproduct_basis(k, 2) == expected


@given(st.integers(0, 10), qs)
def test_qproduct_basis_roots(k, q):
    p = qproduct_basis(k, q)
    assert p.degree == k and p.is_monic()
    for j in range(k):
        assert p(q ** j) == 0


@given(polys, polys, small, small, qs)
def test_hahn_is_linear(f, g, s, t, q):
    lhs = hahn_derivative(scale(f, s) + scale(g, t), q)
    rhs = scale(hahn_derivative(f, q), s) + scale(hahn_derivative(g, q), t)
    assert lhs == rhs


@given(st.integers(1, 20), qs)
def test_hahn_monomial_rule(n, q):
    assert hahn_derivative(QPoly.monomial(n), q) == QPoly.monomial(n - 1, qnum(n, q))


def test_hahn_monomial_rule_against_quotient():
    rng = random.Random(11)
    for n in range(1, 16):
        q = Fraction(rng.choice([-3, -2, 2, 3, 5]), rng.choice([1, 7, 11]))
        f = QPoly.monomial(n)
        d = hahn_derivative(f, q)
        for _ in range(20):
            x0 = random_rational(rng)
            assert d(x0) == hahn_quotient(f, q, x0)


@given(polys, small.filter(bool), qs)
def test_hahn_commutes_with_argument_scaling(f, c, q):
    assert hahn_derivative(scale_arg(f, c), q) == scale(scale_arg(hahn_derivative(f, q), c), c)


@given(polys.filter(lambda p: p.degree >= 1), qs)
def test_hahn_drops_degree_by_one(f, q):
    assert hahn_derivative(f, q).degree == f.degree - 1


def test_product_degree_and_leading_coefficient():
    rng = random.Random(3)
    for _ in range(500):
        f = random_poly(rng, rng.randint(0, 8))
        g = random_poly(rng, rng.randint(0, 8))
        h = f * g
        assert h.degree == f.degree + g.degree
        assert h.leading == f.leading * g.leading
        x0 = random_rational(rng, nonzero=False)
        assert h(x0) == f(x0) * g(x0)


@settings(max_examples=50)
@given(polys)
def test_json_and_terms_roundtrip(f):
    assert from_json(to_json(f)) == f
    assert from_terms(to_terms(f)) == f


def test_serialized_forms():
    f = QPoly([-1, 0, 1])
    assert to_json(f) == ["-1", "0", "1"]
    assert to_terms(QPoly([7, -6, 1])) == ["x^2: 1", "x: -6", "1: 7"]
    assert to_latex(QPoly([Fraction(-1, 2), 0, 1])) == r"x^{2} - \frac{1}{2}"
    assert str(QPoly([7, -6, 1])) == "x^2 - 6*x + 7"
