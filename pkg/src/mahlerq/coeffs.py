"""The coefficient recursion for a_{n,j}, b_{n,j}, c_{n,j}, d_{n,j}.

Starting from d_{0,0} = 1, each step turns the (c_n, d_n) row into
(a_{n+1}, b_{n+1}) and then into (c_{n+1}, d_{n+1}).  The weights are the
named polynomial coefficients r, s, p, q, y, z.  Summation bounds follow the
printed equations literally, including the upper bound l <= n - 1 on the
b-sums of the c/d step.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .field import ZERO, SqrtThreeNumber
from .recpoly import named_coeff as nc

__all__ = ["CoefficientTable", "AuditReport", "build_tables", "rationality_audit"]

Key = Tuple[int, int]

_INV_ROOT3 = SqrtThreeNumber(0, Fraction(1, 3))  # 1/sqrt(3)
_TWO_OVER_ROOT3 = SqrtThreeNumber(0, Fraction(2, 3))
_THIRD = Fraction(1, 3)


@dataclass
class CoefficientTable:
    """Exact coefficients up to row ``max_n``.

    ``a``, ``b`` and ``c`` hold rows 1..max_n with j = 0..n-1.  ``d`` holds
    rows 0..max_n with j = 0..n.
    """

    max_n: int
    a: Dict[Key, SqrtThreeNumber] = field(default_factory=dict)
    b: Dict[Key, SqrtThreeNumber] = field(default_factory=dict)
    c: Dict[Key, SqrtThreeNumber] = field(default_factory=dict)
    d: Dict[Key, SqrtThreeNumber] = field(default_factory=dict)

    def row(self, name: str, n: int) -> List[SqrtThreeNumber]:
        table = getattr(self, name)
        out = []
        j = 0
        while (n, j) in table:
            out.append(table[(n, j)])
            j += 1
        return out

    def to_json(self) -> dict:
        out = {}
        for name in ("a", "b", "c", "d"):
            table = getattr(self, name)
            rows = sorted({n for n, _ in table})
            out[name] = {str(n): [v.to_json() for v in self.row(name, n)] for n in rows}
        return out


def _step_ab(t: CoefficientTable, n: int) -> None:
    """Fill a_{n+1,*} and b_{n+1,*} from c_{n,*}, d_{n,*}."""
    c, d = t.c, t.d
    for h in range(1, n + 2):
        acc = ZERO
        for l in range(h, n + 1):
            acc += c[(n, l - 1)] * (2 ** (2 * l - 2 * h + 1) * nc("s", 2 * l - 1, h) + nc("q", 2 * l - 1, h))
        total = acc * _INV_ROOT3
        for l in range(h - 1, n + 1):
            total += d[(n, l)] * (2 ** (2 * l - 2 * h + 2) * nc("r", 2 * l, h) + nc("p", 2 * l, h))
        t.a[(n + 1, h - 1)] = total

    acc = ZERO
    for l in range(1, n + 1):
        w = 2 ** (2 * l) * (2 * nc("r", 2 * l - 1, 0) + nc("y", 2 * l - 1, 0))
        w += 2 * nc("p", 2 * l - 1, 0) + nc("z", 2 * l - 1, 0)
        acc += c[(n, l - 1)] * w
    total = acc * _THIRD
    acc = ZERO
    for l in range(0, n + 1):
        acc += d[(n, l)] * (2 ** (2 * l + 1) * nc("s", 2 * l, 0) + nc("q", 2 * l, 0))
    t.b[(n + 1, 0)] = total + acc * _TWO_OVER_ROOT3

    for h in range(1, n + 1):
        total = ZERO
        for l in range(h, n + 1):
            total += c[(n, l - 1)] * (2 ** (2 * l - 2 * h) * nc("r", 2 * l - 1, h) + nc("p", 2 * l - 1, h))
        acc = ZERO
        for l in range(h - 1, n + 1):
            acc += d[(n, l)] * (2 ** (2 * l - 2 * h + 1) * nc("s", 2 * l, h) + nc("q", 2 * l, h))
        t.b[(n + 1, h)] = total + acc * _INV_ROOT3


def _step_cd(t: CoefficientTable, m: int) -> None:
    """Fill c_{m,*} and d_{m,*} from a_{m,*}, b_{m,*}."""
    a, b = t.a, t.b
    for h in range(1, m + 1):
        acc = ZERO
        for l in range(h, m + 1):
            acc += a[(m, l - 1)] * (2 ** (2 * l - 2 * h + 1) * nc("s", 2 * l - 1, h) + nc("q", 2 * l - 1, h))
        total = acc * _INV_ROOT3
        for l in range(h - 1, m):
            total += b[(m, l)] * (2 ** (2 * l - 2 * h + 2) * nc("r", 2 * l, h) + nc("p", 2 * l, h))
        t.c[(m, h - 1)] = total

    acc = ZERO
    for l in range(1, m + 1):
        w = 2 ** (2 * l) * (2 * nc("r", 2 * l - 1, 0) + nc("y", 2 * l - 1, 0))
        w += 2 * nc("p", 2 * l - 1, 0) + nc("z", 2 * l - 1, 0)
        acc += a[(m, l - 1)] * w
    total = acc * _THIRD
    acc = ZERO
    for l in range(0, m):
        acc += b[(m, l)] * (2 ** (2 * l + 1) * nc("s", 2 * l, 0) + nc("q", 2 * l, 0))
    t.d[(m, 0)] = total + acc * _TWO_OVER_ROOT3

    for h in range(1, m + 1):
        total = ZERO
        for l in range(h, m + 1):
            total += a[(m, l - 1)] * (2 ** (2 * l - 2 * h) * nc("r", 2 * l - 1, h) + nc("p", 2 * l - 1, h))
        acc = ZERO
        for l in range(h, m):
            acc += b[(m, l)] * (2 ** (2 * l - 2 * h + 1) * nc("s", 2 * l, h) + nc("q", 2 * l, h))
        t.d[(m, h)] = total + acc * _INV_ROOT3


_shared = CoefficientTable(0, d={(0, 0): SqrtThreeNumber(1)})
_shared_lock = threading.Lock()


def build_tables(max_n: int) -> CoefficientTable:
    """Return a table holding every row up to ``max_n``.

    Rows are computed once into a shared cache and extended on demand.  The
    returned object is a fresh copy restricted to ``max_n``, so callers may
    keep it without seeing later growth.
    """
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    with _shared_lock:
        while _shared.max_n < max_n:
            n = _shared.max_n
            _step_ab(_shared, n)
            _step_cd(_shared, n + 1)
            _shared.max_n = n + 1
        snap = CoefficientTable(max_n)
        for name in ("a", "b", "c", "d"):
            src = getattr(_shared, name)
            getattr(snap, name).update({k: v for k, v in src.items() if k[0] <= max_n})
    return snap


@dataclass
class AuditReport:
    max_n: int
    checked: int
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def rationality_audit(table: CoefficientTable) -> AuditReport:
    """a, d must be rational and b, c pure multiples of sqrt(3)."""
    violations = []
    checked = 0
    for name, want in (("a", "rational"), ("d", "rational"), ("b", "root"), ("c", "root")):
        for key, v in sorted(getattr(table, name).items()):
            checked += 1
            good = v.is_rational() if want == "rational" else v.is_pure_root()
            if not good:
                violations.append(f"{name}[{key[0]},{key[1]}] = {v} is not {'rational' if want == 'rational' else 'a rational multiple of sqrt(3)'}")
    if table.d.get((0, 0)) != SqrtThreeNumber(1):
        violations.append("d[0,0] != 1")
    return AuditReport(table.max_n, checked, violations)
