"""Independent fixed-point oracle used by the torus and acceptance tests.

Solves f(x) = x by rational matrix inversion and a full coset walk, with no
shared code with the Smith-form solver in the package: the base solution is
(I - M)^-1 t, and translates by (I - M)^-1 over one period per column are
deduplicated mod 1. Every reported point is re-verified by direct application.
"""

from fractions import Fraction
from itertools import product
from math import lcm

import sympy


def brute_force_fixed_count(f, cap: int = 50000):
    """Number of fixed points of an affine automorphism, or None when the
    linear part has eigenvalue 1 (the oracle only handles isolated sets)."""
    n = f.model.rank
    a = sympy.Matrix([
        [(1 if i == j else 0) - f.linear[i][j] for j in range(n)]
        for i in range(n)
    ])
    if a.det() == 0:
        return None
    k = a.inv()
    t = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator)]
                      for v in f.translation])
    x0 = k * t
    col_periods = []
    for j in range(n):
        d = 1
        for i in range(n):
            d = lcm(d, sympy.Rational(k[i, j]).q)
        col_periods.append(d)
    total = 1
    for d in col_periods:
        total *= d
    if total > cap:
        raise ValueError(f"oracle walk too large ({total})")
    points = set()
    for offsets in product(*(range(d) for d in col_periods)):
        pt = []
        for i in range(n):
            v = x0[i, 0] + sum(k[i, j] * offsets[j] for j in range(n))
            q = sympy.Rational(v)
            pt.append(Fraction(int(q.p), int(q.q)) % 1)
        points.add(tuple(pt))
    for pt in points:
        if f.apply(pt) != pt:
            raise ArithmeticError("oracle produced a non-fixed point")
    return len(points)
