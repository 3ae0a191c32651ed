"""Dense univariate polynomials over the rationals, plus the Hahn derivative."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import as_rational, format_rational, parse_rational, qparam


class QPoly:
    """Polynomial in ``x`` with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are
    stripped, so the zero polynomial is the empty tuple and has
    ``degree == -1``.  Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> QPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> QPoly:
        if n < 0:
            raise ValueError("negative exponent")
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> QPoly:
        return cls((0, 1))

    @classmethod
    def zero(cls) -> QPoly:
        return cls()

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 stands in for minus infinity on the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1] == 1

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            raise IndexError("negative exponent")
        if i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == QPoly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"QPoly({[format_rational(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        return to_text(self)

    def __neg__(self) -> QPoly:
        return QPoly(-c for c in self._coeffs)

    def __add__(self, other) -> QPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> QPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sub(self, other)

    def __rsub__(self, other) -> QPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sub(other, self)

    def __mul__(self, other) -> QPoly:
        if isinstance(other, QPoly):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x0) -> Fraction:
        return evaluate(self, x0)


def _coerce(value):
    if isinstance(value, QPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return QPoly.constant(value)
    return NotImplemented


def add(f: QPoly, g: QPoly) -> QPoly:
    n = max(len(f), len(g))
    return QPoly(f[i] + g[i] for i in range(n))


def sub(f: QPoly, g: QPoly) -> QPoly:
    n = max(len(f), len(g))
    return QPoly(f[i] - g[i] for i in range(n))


def mul(f: QPoly, g: QPoly) -> QPoly:
    if f.is_zero() or g.is_zero():
        return QPoly()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return QPoly(out)


def scale(f: QPoly, s) -> QPoly:
    s = as_rational(s)
    return QPoly(c * s for c in f.coeffs)


def evaluate(f: QPoly, x0) -> Fraction:
    """Horner evaluation at a rational point."""
    x0 = as_rational(x0)
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = acc * x0 + c
    return acc


def scale_arg(f: QPoly, c) -> QPoly:
    """Return ``g`` with ``g(x) = f(c*x)``."""
    c = as_rational(c)
    out = []
    power = Fraction(1)
    for a in f.coeffs:
        out.append(a * power)
        power *= c
    return QPoly(out)


def hahn_derivative(f: QPoly, q) -> QPoly:
    """Hahn q-derivative, applied termwise as ``x^n -> [n]_q x^(n-1)``.

    Equal to ``(f(x) - f(qx)) / ((1 - q) x)`` away from ``x = 0``; the basis
    form has no removable singularity to worry about.
    """
    q = qparam(q)
    out = []
    bracket = Fraction(0)
    power = Fraction(1)
    for a in f.coeffs[1:]:
        bracket += power  # [n]_q for the current n
        power *= q
        out.append(a * bracket)
    return QPoly(out)


def qproduct_basis(k: int, q) -> QPoly:
    """``(x - 1)(x - q)...(x - q^(k-1))``, i.e. ``(1/x; q)_k * x^k``."""
    q = qparam(q)
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = QPoly.constant(1)
    root = Fraction(1)
    for _ in range(k):
        result = mul(result, QPoly((-root, 1)))
        root *= q
    return result


def linear_combination(terms: Sequence[tuple[object, QPoly]]) -> QPoly:
    n = max((len(p) for _, p in terms), default=0)
    out = [Fraction(0)] * n
    for s, p in terms:
        s = as_rational(s)
        if s == 0:
            continue
        for i, c in enumerate(p.coeffs):
            out[i] += s * c
    return QPoly(out)


# -- serialization -----------------------------------------------------------

def to_json(f: QPoly) -> list[str]:
    """Coefficient strings, lowest degree first; ``[]`` is the zero polynomial."""
    return [format_rational(c) for c in f.coeffs]


def from_json(data: Sequence[str]) -> QPoly:
    if not isinstance(data, (list, tuple)):
        raise ValueError("polynomial must be a list of coefficient strings")
    return QPoly(parse_rational(str(s)) for s in data)


def _monomial_label(i: int) -> str:
    if i == 0:
        return "1"
    if i == 1:
        return "x"
    return f"x^{i}"


def to_terms(f: QPoly) -> list[str]:
    """Dense ``"x^k: c"`` labels from the top degree down (used by CSV output)."""
    if f.is_zero():
        return ["1: 0"]
    return [f"{_monomial_label(i)}: {format_rational(f[i])}" for i in range(f.degree, -1, -1)]


def from_terms(terms: Sequence[str]) -> QPoly:
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        label, _, value = term.partition(":")
        label = label.strip()
        if label == "1":
            i = 0
        elif label == "x":
            i = 1
        elif label.startswith("x^"):
            i = int(label[2:])
        else:
            raise ValueError(f"bad monomial label {label!r}")
        coeffs[i] = parse_rational(value)
    top = max(coeffs, default=-1)
    return QPoly(coeffs.get(i, 0) for i in range(top + 1))


def to_text(f: QPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        elif mag == 1:
            body = _monomial_label(i)
        else:
            body = f"{format_rational(mag)}*{_monomial_label(i)}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _latex_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return rf"\frac{{{r.numerator}}}{{{r.denominator}}}"


def to_latex(f: QPoly) -> str:
    if f.is_zero():
        return "0"
    out = ""
    for i in range(f.degree, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = _latex_rational(mag)
        else:
            mono = "x" if i == 1 else f"x^{{{i}}}"
            body = mono if mag == 1 else _latex_rational(mag) + mono
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out
