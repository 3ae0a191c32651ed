"""Quasi-orthogonal q-Appell families.

For nonzero rationals ``alpha``, ``beta``, ``lam`` and the rescaled
Al-Salam--Carlitz family ``P_n(x) = beta^n U_n^{(alpha/beta)}(x/beta; q)``,
the monic family

    Q_0 = 1,    Q_n = P_n - ([n]_q / lam) P_{n-1}    (n >= 1)

is q-Appell and quasi-orthogonal of order one with respect to the moment
functional of ``P``.  It satisfies the extended recurrence

    Q_{n+1} = (x + b q^n) Q_n - c q^(n-1) [n]_q Q_{n-1}
              + d_n * sum_{k <= n-2} (lam^k / [k]_q!) Q_k

with ``d_0 = d_1 = 0`` and ``d_n = (q [n]_q / lam) d_{n-1}`` for ``n >= 3``.
This module builds the family and checks each of those facts exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .alsalamcarlitz import PolyFamily, TTRRCoeffs, as_family, scaled_family
from .exactnum import as_rational, format_rational, qfact, qnum, qparam
from .qpoly import QPoly, linear_combination, scale, to_json


class NotInSpanError(ValueError):
    """Raised when ``Q_n`` is not a combination of ``P_n`` and ``P_{n-1}``."""

    def __init__(self, message: str, remainder: QPoly):
        super().__init__(message)
        self.remainder = remainder


class RecurrenceMismatchError(ValueError):
    """Raised when a family cannot satisfy the extended recurrence."""

    def __init__(self, message: str, n: int, residual: QPoly):
        super().__init__(message)
        self.n = n
        self.residual = residual


class MomentOverflowError(ValueError):
    """The functional has too few moments for the requested polynomial."""


@dataclass(frozen=True)
class QuasiParams:
    alpha: Fraction
    beta: Fraction
    lam: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "lam"):
            value = as_rational(getattr(self, name))
            if value == 0:
                raise ValueError(f"{name} must be nonzero")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "q", qparam(self.q))

    def to_dict(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "lambda": format_rational(self.lam),
            "q": format_rational(self.q),
        }


@dataclass(frozen=True)
class RecurrenceParams:
    """Constants ``b``, ``c``, ``d_2`` and ``lam`` of the extended recurrence."""

    b: Fraction
    c: Fraction
    d2: Fraction
    lam: Fraction

    def b_n(self, n: int, q) -> Fraction:
        return qparam(q) ** n * self.b

    def c_n(self, n: int, q) -> Fraction:
        if n == 0:
            return Fraction(0)
        q = qparam(q)
        return q ** (n - 1) * qnum(n, q) * self.c

    def d_sequence(self, q, N: int) -> list[Fraction]:
        """``d_0..d_N``: zero below 2, seeded by ``d2``, then ``d_n = (q [n]_q / lam) d_{n-1}``."""
        q = qparam(q)
        d = [Fraction(0)] * (N + 1)
        for n in range(2, N + 1):
            d[n] = self.d2 if n == 2 else q * qnum(n, q) / self.lam * d[n - 1]
        return d

    def to_dict(self) -> dict:
        return {
            "b": format_rational(self.b),
            "c": format_rational(self.c),
            "d2": format_rational(self.d2),
            "lambda": format_rational(self.lam),
        }


@dataclass(frozen=True)
class MomentFunctional:
    """Linear functional ``L`` with ``L[x^k] = moments[k]`` and ``L[1] = 1``."""

    moments: tuple[Fraction, ...]

    def __post_init__(self):
        moments = tuple(as_rational(m) for m in self.moments)
        if not moments or moments[0] != 1:
            raise ValueError("moment functional must be normalized with mu_0 = 1")
        object.__setattr__(self, "moments", moments)

    @property
    def max_degree(self) -> int:
        return len(self.moments) - 1

    def __call__(self, f: QPoly) -> Fraction:
        return functional_apply(self, f)


@dataclass(frozen=True)
class Report:
    """Outcome of one verification; ``first_failure`` is ``None`` on success."""

    theorem: str
    passed: bool
    first_failure: dict | None = None
    params: Mapping[str, object] = field(default_factory=dict)
    failures: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "pass": self.passed,
            "first_failure": self.first_failure,
        }


def connection_coeffs(lam, q, N: int) -> list[Fraction]:
    """``T_n = lam^n / [n]_q!`` for ``n = 0..N``."""
    lam = as_rational(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    q = qparam(q)
    return [lam ** n / qfact(n, q) for n in range(N + 1)]


def build_Q(params: QuasiParams, N: int) -> PolyFamily:
    """Quasi-orthogonal q-Appell family ``Q_0..Q_N`` (all monic)."""
    P = scaled_family(params.alpha, params.beta, params.q, N)
    members = [P[0]]
    for n in range(1, N + 1):
        members.append(P[n] - scale(P[n - 1], qnum(n, params.q) / params.lam))
    return PolyFamily(
        tuple(members),
        {"family": "quasi", "alpha": params.alpha, "beta": params.beta,
         "lambda": params.lam, "q": params.q},
    )


def riesz_decompose(Qn: QPoly, P, n: int) -> tuple[Fraction, Fraction]:
    """Solve ``Q_n = riesz_a P_n + riesz_b P_{n-1}`` exactly.

    The pair is fixed by the top two coefficients of ``Q_n``; anything left
    over raises :class:`NotInSpanError`.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if Qn.degree != n:
        raise ValueError(f"Q_n has degree {Qn.degree}, expected {n}")
    Pn, Pm = P[n], P[n - 1]
    riesz_a = Qn[n] / Pn[n]
    riesz_b = (Qn[n - 1] - riesz_a * Pn[n - 1]) / Pm[n - 1]
    remainder = Qn - scale(Pn, riesz_a) - scale(Pm, riesz_b)
    if not remainder.is_zero():
        raise NotInSpanError(f"Q_{n} is not in the span of P_{n} and P_{n - 1}", remainder)
    return riesz_a, riesz_b


def moments_from_ttrr(coeffs: TTRRCoeffs, M: int) -> MomentFunctional:
    """Moments ``mu_0..mu_M`` of the functional that makes the recurrence family orthogonal.

    ``x^k`` is expanded in the ``P`` basis by repeated use of
    ``x P_n = P_{n+1} + B_n P_n + C_n P_{n-1}``; since ``L[P_0] = 1`` and
    ``L[P_n] = 0`` otherwise, ``mu_k`` is the ``P_0`` coefficient.
    Components above index ``M - k`` can never reach ``P_0`` and are dropped.
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    if len(coeffs) < M:
        raise ValueError(f"need recurrence data through index {M - 1}, have {len(coeffs) - 1}")
    B, C = coeffs.B, coeffs.C
    moments = [Fraction(1)]
    v = [Fraction(1)]  # x^k in the P basis
    for k in range(1, M + 1):
        keep = M - k
        w = [Fraction(0)] * (min(len(v) + 1, keep + 1))
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            if j + 1 <= keep:
                w[j + 1] += vj
            if j <= keep:
                w[j] += B[j] * vj
            if 1 <= j <= keep + 1:
                w[j - 1] += C[j] * vj
        v = w
        moments.append(v[0])
    return MomentFunctional(tuple(moments))


def functional_apply(L: MomentFunctional, f: QPoly) -> Fraction:
    if f.degree > L.max_degree:
        raise MomentOverflowError(
            f"degree {f.degree} needs moments through {f.degree}, only {L.max_degree} available"
        )
    return sum((c * mu for c, mu in zip(f.coeffs, L.moments)), Fraction(0))


def _over_common_denominator(values) -> tuple[list[int], int]:
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return [v.numerator * (den // v.denominator) for v in values], den


def quasi_orthogonality_test(Q, L: MomentFunctional, N: int | None = None) -> Report:
    """Check order-one quasi-orthogonality of ``Q_0..Q_N`` against ``L``.

    For each ``n``: ``L[x^m Q_n] = 0`` for ``m <= n - 2``,
    ``L[x^(n-1) Q_n] != 0`` when ``n >= 1``, and ``L[Q_0] != 0``.
    Every failing ``(n, m)`` is recorded; ``first_failure`` is the one with
    the smallest ``n``.
    """
    Q = as_family(Q)
    N = Q.max_degree if N is None else N
    if N > Q.max_degree:
        raise ValueError(f"family only reaches degree {Q.max_degree}")
    if 2 * N - 1 > L.max_degree:
        raise MomentOverflowError(f"need moments through {2 * N - 1}, have {L.max_degree}")
    # integer dot products; only nonzero-ness and the failing value matter
    mu, mu_den = _over_common_denominator(L.moments)

    def shifted(n: int, m: int) -> Fraction:
        coeffs, den = poly_ints[n]
        total = sum(c * mu[i + m] for i, c in enumerate(coeffs))
        return Fraction(total, den * mu_den)

    poly_ints = {n: _over_common_denominator(Q[n].coeffs) for n in range(N + 1)}
    failures = []
    if shifted(0, 0) == 0:
        failures.append({"n": 0, "m": 0, "value": "0", "clause": "nonzero"})
    for n in range(1, N + 1):
        for m in range(n - 1):
            value = shifted(n, m)
            if value != 0:
                failures.append({"n": n, "m": m, "value": format_rational(value), "clause": "zero"})
                break
        if shifted(n, n - 1) == 0:
            failures.append({"n": n, "m": n - 1, "value": "0", "clause": "nonzero"})
    return Report("quasi", not failures, failures[0] if failures else None, failures=tuple(failures))


def _solve_multiple(R: QPoly, G: QPoly) -> Fraction | None:
    """Return ``s`` with ``R == s * G``, or ``None`` if there is none."""
    if R.is_zero():
        return Fraction(0)
    if R.degree != G.degree:
        return None
    s = R.leading / G.leading
    return s if R == scale(G, s) else None


def extract_recurrence_params(Q, lam, q) -> RecurrenceParams:
    """Read ``b``, ``c`` and ``d_2`` off the ``n = 0, 1, 2`` instances of the recurrence.

    ``lam`` is an input, not an unknown: it fixes the tail weights
    ``lam^k / [k]_q!``.
    """
    Q = as_family(Q)
    lam = as_rational(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    q = qparam(q)
    if len(Q) < 4:
        raise ValueError("need at least Q_0..Q_3 to extract b, c and d_2")
    x = QPoly.x()

    r0 = Q[1] - x * Q[0]
    b = _solve_multiple(r0, Q[0])
    if b is None:
        raise RecurrenceMismatchError("no b with Q_1 = (x + b) Q_0", 0, r0)

    r1 = Q[2] - (x + b * q) * Q[1]
    neg_c = _solve_multiple(r1, Q[0])
    if neg_c is None:
        raise RecurrenceMismatchError("no c with Q_2 = (x + bq) Q_1 - c Q_0", 1, r1)
    c = -neg_c

    r2 = Q[3] - (x + b * q ** 2) * Q[2] + scale(Q[1], c * q * qnum(2, q))
    T0 = connection_coeffs(lam, q, 0)[0]
    d2_T0 = _solve_multiple(r2, Q[0])
    if d2_T0 is None:
        raise RecurrenceMismatchError("no d_2 fits the n = 2 instance", 2, r2)
    return RecurrenceParams(b, c, d2_T0 / T0, lam)


def recurrence_residual(Q: PolyFamily, params: RecurrenceParams, q, n: int,
                        d_n: Fraction, tail: QPoly) -> QPoly:
    x = QPoly.x()
    r = Q[n + 1] - (x + params.b_n(n, q)) * Q[n]
    if n >= 1:
        r = r + scale(Q[n - 1], params.c_n(n, q))
    if d_n != 0:
        r = r - scale(tail, d_n)
    return r


def verify_extended_recurrence(Q, params: RecurrenceParams, q, N: int) -> Report:
    """Check the extended recurrence for ``n = 0..N`` (needs ``Q_0..Q_{N+1}``).

    ``d_n`` beyond ``n = 2`` comes from the d-recursion, not from fitting, so
    a pass also confirms that recursion.
    """
    Q = as_family(Q)
    q = qparam(q)
    if len(Q) < N + 2:
        raise ValueError(f"need Q_0..Q_{N + 1}, family stops at Q_{Q.max_degree}")
    T = connection_coeffs(params.lam, q, N)
    d = params.d_sequence(q, N)
    tail = QPoly()  # sum_{k <= n-2} T_k Q_k
    for n in range(N + 1):
        if n >= 2:
            tail = tail + scale(Q[n - 2], T[n - 2])
        r = recurrence_residual(Q, params, q, n, d[n], tail)
        if not r.is_zero():
            return Report("3.1", False, {"n": n, "residual": to_json(r)})
    return Report("3.1", True)


def expand_in_basis(f: QPoly, basis: Sequence[QPoly]) -> list[Fraction]:
    """Coefficients ``e`` with ``f = sum e_k basis[k]``; ``basis[k]`` has degree ``k``."""
    if f.degree >= len(basis):
        raise ValueError(f"degree {f.degree} exceeds the basis")
    out = [Fraction(0)] * (max(f.degree, -1) + 1)
    rem = f
    for k in range(f.degree, -1, -1):
        coef = rem[k] / basis[k][k]
        out[k] = coef
        if coef:
            rem = rem - scale(basis[k], coef)
    return out


def solve_recurrence_at(Q, lam, q, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Fit ``(b_n, c_n, d_n)`` for a single index, independently of other indices.

    Expands ``Q_{n+1} - x Q_n`` in the ``Q`` basis; the tail coefficients
    must all be the same multiple of ``lam^k / [k]_q!``.
    """
    Q = as_family(Q)
    lam = as_rational(lam)
    q = qparam(q)
    r = Q[n + 1] - QPoly.x() * Q[n]
    if r.degree > n:
        raise RecurrenceMismatchError(f"Q_{n + 1} - x Q_{n} has degree {r.degree}", n, r)
    e = expand_in_basis(r, Q.members[: n + 1])
    e += [Fraction(0)] * (n + 1 - len(e))
    b_n = e[n]
    c_n = -e[n - 1] if n >= 1 else Fraction(0)
    if n < 2:
        return b_n, c_n, Fraction(0)
    T = connection_coeffs(lam, q, n - 2)
    d_n = e[0] / T[0]
    for k in range(1, n - 1):
        if e[k] != d_n * T[k]:
            tail = linear_combination([(e[j], Q[j]) for j in range(n - 1)])
            raise RecurrenceMismatchError(
                f"tail at n = {n} is not proportional to lam^k/[k]_q!", n, tail
            )
    return b_n, c_n, d_n


def reconstruct_P_from_Q(Q, lam, q) -> PolyFamily:
    """``P_n = ([n]_q! / lam^n) sum_{k <= n} (lam^k / [k]_q!) Q_k``."""
    Q = as_family(Q)
    lam = as_rational(lam)
    q = qparam(q)
    T = connection_coeffs(lam, q, Q.max_degree)
    members = []
    partial = QPoly()
    for n, Qn in enumerate(Q):
        partial = partial + scale(Qn, T[n])
        members.append(scale(partial, 1 / T[n]))
    return PolyFamily(tuple(members), {"family": "reconstructed", "lambda": lam, "q": q})


def check_riesz_structure(Q, P, lam=None, q=None) -> Report:
    """Every ``Q_n`` (``n >= 1``) must be ``a_n P_n + b_n P_{n-1}`` with both nonzero.

    When ``lam`` is given the pair must be exactly ``(1, -[n]_q/lam)`` and the
    connection sum must rebuild ``P`` from ``Q``.
    """
    Q, P = as_family(Q), as_family(P)
    for n in range(1, len(Q)):
        try:
            ra, rb = riesz_decompose(Q[n], P, n)
        except NotInSpanError as exc:
            return Report("3.2", False, {"n": n, "reason": "not in span",
                                         "remainder": to_json(exc.remainder)})
        if ra == 0 or rb == 0:
            return Report("3.2", False, {"n": n, "reason": "degenerate pair",
                                         "riesz_a": format_rational(ra),
                                         "riesz_b": format_rational(rb)})
        if lam is not None and (ra, rb) != (1, -qnum(n, q) / as_rational(lam)):
            return Report("3.2", False, {"n": n, "reason": "pair differs from (1, -[n]_q/lambda)",
                                         "riesz_a": format_rational(ra),
                                         "riesz_b": format_rational(rb)})
    if lam is not None:
        rebuilt = reconstruct_P_from_Q(Q, lam, q)
        for n, (got, want) in enumerate(zip(rebuilt, P)):
            if got != want:
                return Report("3.2", False, {"n": n, "reason": "connection sum does not rebuild P",
                                             "residual": to_json(got - want)})
    return Report("3.2", True)
