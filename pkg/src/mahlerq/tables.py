"""Reference polynomials and measure coefficients as printed in the source.

Values are copied verbatim, typos included.  ``PRINTED_ERRATA`` lists
entries where the printed value disagrees with the defining recursion.  The
acceptance check compares against the printed values and reports those
entries as failures rather than patching them.
"""

from __future__ import annotations

from fractions import Fraction as Fr

from .field import ParityPolynomial, SqrtThreeNumber

__all__ = ["PRINTED_POLYS", "PRINTED_ERRATA", "TABLE1", "printed_poly"]

_r3 = lambda q: SqrtThreeNumber(0, Fr(q))  # noqa: E731  q*sqrt(3)

# dense coefficient lists, index = power of x
PRINTED_POLYS = {
    ("R", 0): [0, 1],
    ("R", 1): [Fr(-5, 4), 0, Fr(1, 2)],
    ("R", 2): [0, Fr(1, 2), 0, Fr(1, 3)],
    ("R", 3): [Fr(-73, 8), 0, Fr(3, 4), 0, Fr(1, 4)],
    ("S", 0): [Fr(-1, 2)],
    ("S", 1): [0, Fr(-1, 2)],
    ("S", 2): [Fr(-1, 3), 0, Fr(-1, 2)],
    ("S", 3): [0, -1, 0, Fr(-1, 2)],
    ("P", 0): [0, 1],
    ("P", 1): [Fr(-13, 2), 0, Fr(1, 2)],
    ("P", 2): [0, -1, 0, Fr(1, 3)],
    ("P", 3): [Fr(-623, 4), 0, Fr(-3, 2), 0, Fr(1, 4)],
    ("Q", 0): [2],
    ("Q", 1): [0, 2],
    ("Q", 2): [Fr(10, 3), 0, 2],
    ("Q", 3): [0, 10, 0, 2],
    ("Y", 0): [0, -2],
    ("Y", 1): [Fr(9, 2), 0, -1],
    ("Y", 2): [0, 3, 0, Fr(-2, 3)],
    ("Y", 3): [Fr(81, 4), 0, Fr(9, 2), 0, Fr(-1, 2)],
    ("Z", 0): [0, -2],
    ("Z", 1): [9, 0, -1],
    ("Z", 2): [0, -6, 0, Fr(-2, 3)],
    ("Z", 3): [Fr(567, 4), 0, -9, 0, Fr(-1, 2)],
    # 1/sqrt3 = sqrt3/3
    ("A", 0): [0, _r3(Fr(-4, 3))],
    ("A", 1): [0, Fr(-2, 3)],
    ("A", 2): [0, _r3(Fr(-2, 3)), 0, _r3(Fr(-4, 9))],
    ("A", 3): [0, Fr(-4, 3), 0, Fr(-2, 3)],
    ("B", 0): [Fr(-2, 3)],
    ("B", 1): [_r3(Fr(-1, 3)), 0, _r3(Fr(-2, 3))],
    ("B", 2): [Fr(-4, 9), 0, Fr(-2, 3)],
    ("B", 3): [_r3(Fr(-13, 30)), 0, _r3(-1), 0, _r3(Fr(-1, 3))],
}

# entry -> (printed constant, value implied by the recursion, note)
PRINTED_ERRATA = {
    ("Z", 3): (
        Fr(567, 4),
        Fr(567, 2),
        "constant term; quadrature of g2(3) confirms 567/2",
    ),
}


def printed_poly(family: str, k: int) -> ParityPolynomial:
    return ParityPolynomial.from_dense(PRINTED_POLYS[(family, k)])


# Table 1.  n -> basis -> {(kind, h): coefficient}.  In the critical basis
# ("zeta", h) multiplies zeta(2h+1)/pi^(2h) and ("L", h) multiplies
# L(chi_-3, 2h+2)/pi^(2h+1).  In the derivative basis they multiply
# zeta'(-2h) and L'(chi_-3, -2h-1).
_R = SqrtThreeNumber
TABLE1 = {
    1: {
        "critical": {("L", 0): _r3(Fr(5, 4))},
        "derivative": {("L", 0): _R(Fr(5, 3))},
    },
    2: {
        "critical": {("zeta", 1): _R(Fr(91, 18)), ("L", 0): _r3(Fr(5, 12))},
        "derivative": {("zeta", 1): _R(Fr(-182, 9)), ("L", 0): _R(Fr(5, 9))},
    },
    3: {
        "critical": {("zeta", 1): _R(Fr(91, 36)), ("L", 0): _r3(Fr(5, 12)), ("L", 1): _r3(Fr(153, 16))},
        "derivative": {("zeta", 1): _R(Fr(-91, 9)), ("L", 0): _R(Fr(5, 9)), ("L", 1): _R(Fr(-17, 18))},
    },
    4: {
        "critical": {
            ("zeta", 1): _R(Fr(91, 36)),
            ("zeta", 2): _R(Fr(3751, 108)),
            ("L", 0): _r3(Fr(35, 108)),
            ("L", 1): _r3(Fr(51, 8)),
        },
        "derivative": {
            ("zeta", 1): _R(Fr(-91, 9)),
            ("zeta", 2): _R(Fr(3751, 81)),
            ("L", 0): _R(Fr(35, 81)),
            ("L", 1): _R(Fr(-17, 27)),
        },
    },
}
