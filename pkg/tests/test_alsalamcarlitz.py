import random
from fractions import Fraction

import pytest

from qappell.alsalamcarlitz import (
    MalformedFamilyError,
    PolyFamily,
    asc_hypergeom,
    asc_recurrence,
    scaled_family,
    ttrr_coeffs,
    ttrr_residuals,
)
from qappell.exactnum import qnum, qpochhammer
from qappell.qpoly import QPoly, hahn_derivative, scale

from oracles import random_q, random_rational

X = QPoly.x()


def test_recurrence_small_cases():
    assert asc_recurrence(1, 2, 0).members == (QPoly([1]),)
    fam = asc_recurrence(1, 2, 2)
    assert fam[1] == X - 2
    assert fam[2] == QPoly([7, -6, 1])


@pytest.mark.parametrize("n, expected", [(0, QPoly([1])), (1, X - 2)])
def test_hypergeometric_small_cases(n, expected):
    assert asc_hypergeom(1, 2, n) == expected


def test_routes_agree_at_negative_parameters():
    a, q = Fraction(-3, 2), Fraction(1, 3)
    fam = asc_recurrence(a, q, 5)
    assert [asc_hypergeom(a, q, n) for n in range(6)] == list(fam)


@pytest.mark.parametrize("seed", range(6))
def test_routes_agree_random(seed):
    rng = random.Random(seed)
    a, q = random_rational(rng), random_q(rng)
    fam = asc_recurrence(a, q, 12)
    for n in range(13):
        assert asc_hypergeom(a, q, n) == fam[n]


def test_series_terms_vanish_past_n():
    q = Fraction(-2, 3)
    for n in range(8):
        for k in range(n + 1, n + 4):
            assert qpochhammer(q ** -n, q, k) == 0


@pytest.mark.parametrize("a, q", [(1, 2), (Fraction(-3, 2), Fraction(1, 3)), (5, -3)])
def test_asc_is_monic_and_appell(a, q):
    fam = asc_recurrence(a, q, 12)
    for n, u in enumerate(fam):
        assert u.degree == n and u.is_monic()
        if n:
            assert hahn_derivative(u, q) == scale(fam[n - 1], qnum(n, q))


def test_zero_parameter_rejected():
    with pytest.raises(ValueError):
        asc_hypergeom(0, 2, 3)
    with pytest.raises(ValueError):
        scaled_family(0, 1, 2, 3)
    with pytest.raises(ValueError):
        scaled_family(1, 0, 2, 3)


def test_scaled_family_examples():
    assert scaled_family(1, 1, 2, 2) == asc_recurrence(1, 2, 2)
    assert scaled_family(1, 2, 2, 1)[1] == X - 3


@pytest.mark.parametrize("seed", range(5))
def test_scaled_family_monic_and_recurrence_residuals_vanish(seed):
    rng = random.Random(100 + seed)
    alpha, beta, q = random_rational(rng), random_rational(rng), random_q(rng)
    fam = scaled_family(alpha, beta, q, 10)
    assert all(p.is_monic() for p in fam)
    residuals = ttrr_residuals(fam, ttrr_coeffs(alpha, beta, q, 10))
    assert len(residuals) == 10
    assert all(r.is_zero() for r in residuals)


def test_scaled_family_matches_direct_substitution():
    # beta^n U_n(x / beta) evaluated pointwise
    alpha, beta, q = Fraction(2, 3), Fraction(-5, 2), Fraction(3, 2)
    U = asc_recurrence(alpha / beta, q, 6)
    P = scaled_family(alpha, beta, q, 6)
    for n in range(7):
        for x0 in (Fraction(1, 3), Fraction(-7, 2), Fraction(4)):
            assert P[n](x0) == beta ** n * U[n](x0 / beta)


def test_ttrr_examples():
    c = ttrr_coeffs(1, 1, 2, 3)
    assert c.B[0] == 2
    assert c.C[1] == 1
    assert c.C[0] == 0


def test_family_rejects_degree_gaps():
    with pytest.raises(MalformedFamilyError):
        PolyFamily((QPoly([1]), X, QPoly.monomial(3)))
    with pytest.raises(MalformedFamilyError):
        PolyFamily(())


def test_family_json_roundtrip():
    fam = scaled_family(Fraction(1, 2), 3, Fraction(-1, 3), 4)
    data = fam.to_dict()
    assert data["params"] == {"family": "scaled", "alpha": "1/2", "beta": "3", "q": "-1/3"}
    back = PolyFamily.from_dict(data)
    assert back == fam
    assert back.to_dict() == data
