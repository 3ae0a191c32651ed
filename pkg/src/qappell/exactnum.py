"""Exact rational scalars and scalar q-calculus.

All numbers are :class:`fractions.Fraction`, which already keeps the
canonical form (positive denominator, reduced).  The base ``q`` is a plain
Fraction checked by :func:`qparam`; every q-function below runs that check.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"`` or ``"p"``.  Decimals are refused."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form p/q or p: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(r) -> str:
    return str(as_rational(r))


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings.  Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def qparam(q) -> Fraction:
    """Validate a base q.

    For rational q, excluding 0, 1 and -1 is enough to keep every
    ``[n]_q`` with ``n >= 1`` nonzero.
    """
    q = as_rational(q)
    if q in (0, 1, -1):
        raise ValueError(f"q must not be 0, 1 or -1 (got {q})")
    return q


def qnum(n: int, q) -> Fraction:
    """The q-number ``[n]_q = 1 + q + ... + q^(n-1)``."""
    q = qparam(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(n):
        total += power
        power *= q
    return total


def qfact(n: int, q) -> Fraction:
    """The q-factorial ``[1]_q [2]_q ... [n]_q``; ``qfact(0) == 1``."""
    q = qparam(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = Fraction(1)
    bracket = Fraction(0)
    power = Fraction(1)
    for _ in range(n):
        bracket += power
        power *= q
        result *= bracket
    return result


def qpochhammer(z, q, k: int) -> Fraction:
    """``(z; q)_k = (1 - z)(1 - zq)...(1 - zq^(k-1))``."""
    z = as_rational(z)
    q = qparam(q)
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = Fraction(1)
    zq = z
    for _ in range(k):
        result *= 1 - zq
        zq *= q
    return result
