"""The recursively defined polynomial families R, S, P, Q, Y, Z.

Each family obeys

    F_k(x) = (1/(k+1)) * sum_{j=3,5,...<=k+1} (-1)^((j+1)/2) C(k+1,j) c^(j-1) F_{k+1-j}(x)
             + N_k(x)

with ``c = 3`` for R, S, Y and ``c = 6`` for P, Q, Z.  The non-recursive part
``N_k`` is an explicit binomial sum.  It also supplies the initial values, so
no separate base case is needed.  Everything is computed over the rationals
and memoized.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Dict, List

from .field import ParityPolynomial

__all__ = ["FAMILIES", "binomial", "get_poly", "named_coeff", "RecursiveFamily"]

FAMILIES = ("R", "S", "P", "Q", "Y", "Z")

_RECURSIVE_BASE = {"R": 3, "S": 3, "Y": 3, "P": 6, "Q": 6, "Z": 6}

_pascal: List[List[int]] = [[1]]
_pascal_lock = threading.Lock()


def binomial(n: int, k: int) -> int:
    """Binomial coefficient from a cached Pascal triangle."""
    if k < 0 or k > n or n < 0:
        return 0
    if n >= len(_pascal):
        with _pascal_lock:
            while len(_pascal) <= n:
                prev = _pascal[-1]
                _pascal.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return _pascal[n][k]


def _nonrecursive(family: str, k: int) -> Dict[int, Fraction]:
    """Explicit part of F_k as a map exponent -> coefficient."""
    n = k + 1
    out: Dict[int, Fraction] = {}

    def put(e: int, c: Fraction):
        out[e] = out.get(e, Fraction(0)) + c

    if family in ("R", "P"):
        base = 2 if family == "R" else 5
        for j in range(0, n + 1, 2):
            sign = -1 if (j // 2) % 2 else 1
            put(n - j, Fraction(sign * binomial(n, j) * (base**j + 1), 2 * n))
    elif family == "S":
        for j in range(1, n + 1, 2):
            sign = -1 if ((j + 1) // 2) % 2 else 1
            put(n - j, Fraction(sign * binomial(n, j) * (2**j - 1), 2 * n))
    elif family == "Q":
        for j in range(1, n + 1, 2):
            sign = -1 if ((j - 1) // 2) % 2 else 1
            put(n - j, Fraction(sign * binomial(n, j) * (5**j - 1), 2 * n))
    elif family == "Y":
        put(n, Fraction(-1, n))
        for j in range(0, n + 1, 2):
            sign = -1 if (j // 2) % 2 else 1
            put(n - j, Fraction(-sign * binomial(n, j) * 3**j, n))
    elif family == "Z":
        for j in range(0, n + 1, 2):
            sign = -1 if (j // 2) % 2 else 1
            put(n - j, Fraction(-2 * sign * binomial(n, j) * 3**j, n))
    else:
        raise ValueError(f"unknown family {family!r}")
    return out


class RecursiveFamily:
    """Memoized generator for one family.

    The cache is append-only.  Writes take a lock and completed entries are
    read without one.  Construction is deterministic, so a duplicated build
    is harmless.
    """

    def __init__(self, family: str):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
        self.family = family
        self._dense: Dict[int, List[Fraction]] = {}
        self._poly: Dict[int, ParityPolynomial] = {}
        self._lock = threading.Lock()

    def dense(self, k: int) -> List[Fraction]:
        if k < 0:
            raise ValueError("k must be non-negative")
        cached = self._dense.get(k)
        if cached is not None:
            return cached
        for i in range(k + 1):  # bottom-up avoids deep recursion
            if i not in self._dense:
                self._build(i)
        return self._dense[k]

    def _build(self, k: int) -> None:
        n = k + 1
        coeffs = [Fraction(0)] * (n + 1)
        base = _RECURSIVE_BASE[self.family]
        for j in range(3, n + 1, 2):
            sign = -1 if ((j + 1) // 2) % 2 else 1
            factor = Fraction(sign * binomial(n, j) * base ** (j - 1), n)
            for e, c in enumerate(self._dense[n - j]):
                coeffs[e] += factor * c
        for e, c in _nonrecursive(self.family, k).items():
            coeffs[e] += c
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        poly = ParityPolynomial.from_dense(coeffs)
        with self._lock:
            self._dense.setdefault(k, coeffs)
            self._poly.setdefault(k, poly)

    def __call__(self, k: int) -> ParityPolynomial:
        if k not in self._poly:
            self.dense(k)
        return self._poly[k]


_families = {name: RecursiveFamily(name) for name in FAMILIES}


def get_poly(family: str, k: int) -> ParityPolynomial:
    """Return F_k for ``family`` in {R,S,P,Q,Y,Z}."""
    fam = _families.get(family.upper() if isinstance(family, str) else family)
    if fam is None:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a non-negative integer")
    return fam(k)


def _odd_row(tag: str, k: int) -> bool:
    # R,P,Y,Z carry odd powers at even k; S,Q carry odd powers at odd k
    if tag in ("r", "p", "y", "z"):
        return k % 2 == 0
    return k % 2 == 1


def named_coeff(tag: str, k: int, j: int) -> Fraction:
    """Coefficient ``tag_{k,j}``: of x^(2j-1) on odd rows, of x^(2j) on even rows.

    A slot above the degree is zero.  Negative indices, and slot 0 on an odd
    row (which would be x^-1), raise IndexError.
    """
    tag = tag.lower()
    if tag not in ("r", "s", "p", "q", "y", "z"):
        raise ValueError(f"unknown coefficient tag {tag!r}")
    if k < 0 or j < 0:
        raise IndexError(f"{tag}_{{{k},{j}}} is out of range")
    e = 2 * j - 1 if _odd_row(tag, k) else 2 * j
    if e < 0:
        raise IndexError(f"{tag}_{{{k},{j}}} is out of range")
    dense = _families[tag.upper()].dense(k)
    return dense[e] if e < len(dense) else Fraction(0)


def family_callable(family: str) -> Callable[[int], ParityPolynomial]:
    return lambda k: get_poly(family, k)
