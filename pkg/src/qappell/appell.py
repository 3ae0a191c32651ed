"""Check the q-Appell condition ``D_q P_n = [n]_q P_{n-1}`` on a finite family."""

from __future__ import annotations

from dataclasses import dataclass, field

from .alsalamcarlitz import PolyFamily, as_family
from .exactnum import qnum, qparam
from .qpoly import QPoly, hahn_derivative, scale, to_json


@dataclass(frozen=True)
class AppellDefect:
    n: int
    residual: QPoly  # D_q P_n - [n]_q P_{n-1}, never zero

    def to_dict(self) -> dict:
        return {"n": self.n, "residual": to_json(self.residual)}


@dataclass(frozen=True)
class AppellReport:
    holds_up_to: int
    defect: AppellDefect | None
    max_degree: int
    all_defects: tuple[AppellDefect, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.defect is None

    def to_dict(self) -> dict:
        return {
            "holds_up_to": self.holds_up_to,
            "defect": None if self.defect is None else self.defect.to_dict(),
        }


def appell_residual(family: PolyFamily, n: int, q) -> QPoly:
    return hahn_derivative(family[n], q) - scale(family[n - 1], qnum(n, q))


def check_appell(family, q, *, stop_at_first: bool = True) -> AppellReport:
    """Verify ``D_q P_n = [n]_q P_{n-1}`` for ``n = 1..N``.

    The ``n = 0`` case is vacuous (constants are annihilated).  A family whose
    degrees are not exactly ``0, 1, ..., N`` raises
    :class:`~qappell.alsalamcarlitz.MalformedFamilyError` rather than
    producing a defect.  With ``stop_at_first=False`` every failing index is
    collected in ``all_defects``; ``defect`` is still the smallest one.
    """
    family = as_family(family)
    q = qparam(q)
    N = family.max_degree
    defects = []
    for n in range(1, N + 1):
        r = appell_residual(family, n, q)
        if not r.is_zero():
            defects.append(AppellDefect(n, r))
            if stop_at_first:
                break
    if not defects:
        return AppellReport(N, None, N)
    first = defects[0]
    return AppellReport(first.n - 1, first, N, tuple(defects))
