"""Al-Salam--Carlitz I polynomials and their rescaled families.

Two constructions of ``U_n^{(a)}(x; q)`` are provided and must agree:
the monic three-term recurrence and the terminating 2phi1 expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .exactnum import as_rational, format_rational, qparam, qpochhammer
from .qpoly import QPoly, from_json, linear_combination, qproduct_basis, scale, scale_arg, to_json


class MalformedFamilyError(ValueError):
    """A polynomial sequence whose n-th member does not have degree n."""


@dataclass(frozen=True, eq=False)
class PolyFamily:
    """Polynomials ``P_0, ..., P_N`` with ``deg P_n == n``.

    ``params`` records how the family was built (constructor name and its
    rational parameters) so reports can name the route.
    """

    members: tuple[QPoly, ...]
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise MalformedFamilyError("a family needs at least P_0")
        for n, p in enumerate(members):
            if not isinstance(p, QPoly):
                raise TypeError(f"member {n} is not a QPoly")
            if p.degree != n:
                raise MalformedFamilyError(f"member {n} has degree {p.degree}, expected {n}")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "params", dict(self.params))

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, n):
        return self.members[n]

    def __iter__(self) -> Iterator[QPoly]:
        return iter(self.members)

    def __eq__(self, other) -> bool:
        # Provenance is metadata; two families are equal when their members are.
        if not isinstance(other, PolyFamily):
            return NotImplemented
        return self.members == other.members

    __hash__ = None

    @property
    def max_degree(self) -> int:
        return len(self.members) - 1

    def to_dict(self) -> dict:
        return {
            "params": params_to_json(self.params),
            "members": [to_json(p) for p in self.members],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> PolyFamily:
        members = tuple(from_json(m) for m in data["members"])
        return cls(members, dict(data.get("params", {})))


def params_to_json(params: Mapping[str, object]) -> dict:
    """Provenance record with rationals rendered as ``"p/q"`` strings."""
    out = {}
    for key, value in params.items():
        if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
            value = format_rational(value)
        out[key] = value
    return out


def as_family(obj) -> PolyFamily:
    if isinstance(obj, PolyFamily):
        return obj
    return PolyFamily(tuple(obj))


@dataclass(frozen=True)
class TTRRCoeffs:
    """Coefficients of ``P_{n+1} = (x - B_n) P_n - C_n P_{n-1}``.

    ``C[0]`` is stored as 0 since ``P_{-1}`` does not exist.
    """

    B: tuple[Fraction, ...]
    C: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.B) != len(self.C):
            raise ValueError("B and C must have the same length")
        for n, c in enumerate(self.C[1:], start=1):
            if c == 0:
                raise ValueError(f"C_{n} vanishes; the family would not be orthogonal")

    def __len__(self) -> int:
        return len(self.B)


def _check_a(a) -> Fraction:
    a = as_rational(a)
    if a == 0:
        raise ValueError("the Al-Salam-Carlitz parameter a must be nonzero")
    return a


def asc_recurrence(a, q, N: int) -> PolyFamily:
    """``U_0..U_N`` from the monic recurrence.

    ``U_{n+1} = (x - (a+1) q^n) U_n + a q^(n-1) (1 - q^n) U_{n-1}``; at
    ``n = 0`` the last coefficient is zero so no ``U_{-1}`` is needed.
    """
    a = _check_a(a)
    q = qparam(q)
    if N < 0:
        raise ValueError("N must be nonnegative")
    x = QPoly.x()
    members = [QPoly.constant(1)]
    qn = Fraction(1)  # q^n
    for n in range(N):
        nxt = (x - (a + 1) * qn) * members[n]
        if n >= 1:
            nxt = nxt + scale(members[n - 1], a * (qn / q) * (1 - qn))
        members.append(nxt)
        qn *= q
    return PolyFamily(tuple(members), {"family": "asc", "route": "recurrence", "a": a, "q": q})


def asc_hypergeom(a, q, n: int) -> QPoly:
    """``U_n^{(a)}`` from its terminating 2phi1 series.

    Uses ``(1/x; q)_k x^k = prod_{j<k} (x - q^j)`` so the expansion stays
    polynomial.  With two numerator and one denominator parameter the
    ``(-1)^k q^binom(k,2)`` factor has exponent zero, and ``(0; q)_k = 1``.
    """
    a = _check_a(a)
    q = qparam(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    q_minus_n = q ** (-n)
    terms = []
    for k in range(n + 1):
        coeff = qpochhammer(q_minus_n, q, k) / qpochhammer(q, q, k) * (q / a) ** k
        terms.append((coeff, qproduct_basis(k, q)))
    prefactor = (-a) ** n * q ** (n * (n - 1) // 2)
    return scale(linear_combination(terms), prefactor)


def asc_hypergeom_family(a, q, N: int) -> PolyFamily:
    a = _check_a(a)
    q = qparam(q)
    members = tuple(asc_hypergeom(a, q, n) for n in range(N + 1))
    return PolyFamily(members, {"family": "asc", "route": "hypergeometric", "a": a, "q": q})


def _check_alpha_beta(alpha, beta) -> tuple[Fraction, Fraction]:
    alpha, beta = as_rational(alpha), as_rational(beta)
    if beta == 0:
        raise ValueError("beta must be nonzero")
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    return alpha, beta


def scaled_family(alpha, beta, q, N: int) -> PolyFamily:
    """``P_n(x) = beta^n U_n^{(alpha/beta)}(x/beta; q)`` for ``n <= N``."""
    alpha, beta = _check_alpha_beta(alpha, beta)
    q = qparam(q)
    base = asc_recurrence(alpha / beta, q, N)
    members = tuple(
        scale(scale_arg(u, 1 / beta), beta ** n) for n, u in enumerate(base.members)
    )
    return PolyFamily(members, {"family": "scaled", "alpha": alpha, "beta": beta, "q": q})


def ttrr_coeffs(alpha, beta, q, N: int) -> TTRRCoeffs:
    """Monic recurrence data of :func:`scaled_family`, indices ``0..N``.

    ``B_n = (alpha + beta) q^n`` and ``C_n = -alpha beta q^(n-1) (1 - q^n)``.
    """
    alpha, beta = _check_alpha_beta(alpha, beta)
    q = qparam(q)
    B, C = [], []
    qn = Fraction(1)
    for n in range(N + 1):
        B.append((alpha + beta) * qn)
        C.append(Fraction(0) if n == 0 else -alpha * beta * (qn / q) * (1 - qn))
        qn *= q
    return TTRRCoeffs(tuple(B), tuple(C))


def ttrr_residuals(family: PolyFamily, coeffs: TTRRCoeffs) -> list[QPoly]:
    """``P_{n+1} - ((x - B_n) P_n - C_n P_{n-1})`` for every available n."""
    x = QPoly.x()
    out = []
    top = min(len(family) - 1, len(coeffs))
    for n in range(top):
        rhs = (x - coeffs.B[n]) * family[n]
        if n >= 1:
            rhs = rhs - scale(family[n - 1], coeffs.C[n])
        out.append(family[n + 1] - rhs)
    return out


def related_ttrr(params: Mapping[str, object], N: int) -> TTRRCoeffs:
    """Recurrence data for a family's provenance record (asc or scaled)."""
    kind = params.get("family")
    q = as_rational(params["q"])
    if kind == "asc":
        return ttrr_coeffs(as_rational(params["a"]), 1, q, N)
    return ttrr_coeffs(as_rational(params["alpha"]), as_rational(params["beta"]), q, N)

