"""Exact arithmetic in cyclotomic fields and exact linear algebra over them.

A value lives in Q(zeta_N) for a conductor N and is stored as a dense vector
of rationals of length phi(N): the coefficients of a polynomial in zeta_N
reduced modulo the N-th cyclotomic polynomial. Arithmetic between values of
different conductors promotes both to the lcm conductor first. Everything is
exact; no floating point appears anywhere in this package.

Matrices over these fields come with the linear algebra the rest of the
package needs: products, determinants, characteristic polynomials, rank and
nullity by fraction-free elimination, bounded multiplicative order, and
eigenvalue extraction for finite-order matrices by kernel tests against
candidate roots of unity.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import Symbol, cyclotomic_poly, totient

DEFAULT_MAX_CONDUCTOR = 840


def max_conductor() -> int:
    """Largest conductor arithmetic may promote to (env CYCERT_MAX_CONDUCTOR)."""
    raw = os.environ.get("CYCERT_MAX_CONDUCTOR", "")
    return int(raw) if raw else DEFAULT_MAX_CONDUCTOR


class ConductorError(ValueError):
    """Raised when an operation would exceed the configured conductor cap."""


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def _min_poly_coeffs(n: int) -> tuple[int, ...]:
    # Coefficients of the n-th cyclotomic polynomial, constant term first,
    # monic of degree phi(n).
    x = Symbol("x")
    coeffs = cyclotomic_poly(n, x).as_poly(x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    # Reduce a polynomial in zeta_n modulo the cyclotomic polynomial.
    deg = phi(n)
    mod = _min_poly_coeffs(n)
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            # mod is monic: subtract c * x^(i - deg) * Phi_n.
            base = i - deg
            for j, m in enumerate(mod):
                if m:
                    work[base + j] -= c * m
        work.pop()
    while len(work) < deg:
        work.append(Fraction(0))
    return tuple(work)


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    # Division of rational polynomials, coefficient lists constant-first,
    # denominator nonzero. Returns (quotient, remainder).
    num = list(num)
    dd = len(den) - 1
    while dd >= 0 and den[dd] == 0:
        dd -= 1
    if dd < 0:
        raise ZeroDivisionError("polynomial division by zero")
    lead = den[dd]
    quot = [Fraction(0)] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q = c / lead
            quot[i - dd] = q
            for j in range(dd + 1):
                num[i - dd + j] -= q * den[j]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    # Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g.
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]

    def is_zero(p):
        return all(c == 0 for c in p)

    def sub_mul(p, q, f):
        # p - q*f
        out = list(p) + [Fraction(0)] * max(0, len(q) + len(f) - 1 - len(p))
        for i, qc in enumerate(q):
            if qc:
                for j, fc in enumerate(f):
                    if fc:
                        out[i + j] -= qc * fc
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    while not is_zero(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub_mul(s0, s1, q)
        t0, t1 = t1, sub_mul(t0, t1, q)
    return r0, s0, t0


def _coerce_fraction(value) -> Fraction | None:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return None


class CycNum:
    """An element of Q(zeta_N), immutable and exact.

    Deliberately unhashable: equality promotes across conductors, and nothing
    in this package needs these values as dict keys.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        if conductor > max_conductor():
            raise ConductorError(
                f"conductor {conductor} exceeds cap {max_conductor()}"
            )
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi(conductor):
            raise ValueError(
                f"need {phi(conductor)} coefficients for conductor {conductor}, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    __hash__ = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_rational(value) -> "CycNum":
        return CycNum(1, (Fraction(value),))

    def lift(self, conductor: int) -> "CycNum":
        """Re-express in Q(zeta_M) for a multiple M of the current conductor."""
        n = self.conductor
        if conductor == n:
            return self
        if conductor % n:
            raise ValueError(f"{conductor} is not a multiple of {n}")
        step = conductor // n
        out = [Fraction(0)] * ((phi(n) - 1) * step + 1 if phi(n) > 1 else 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] += c
        return CycNum(conductor, _reduce(conductor, out))

    # -- predicates and conversions -----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def _promote_with(self, other):
        if isinstance(other, CycNum):
            n = lcm(self.conductor, other.conductor)
            return self.lift(n), other.lift(n)
        frac = _coerce_fraction(other)
        if frac is None:
            return None, None
        return self, CycNum.from_rational(frac).lift(self.conductor)

    def __eq__(self, other):
        a, b = self._promote_with(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __add__(self, other):
        a, b = self._promote_with(other)
        if a is None:
            return NotImplemented
        return CycNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._promote_with(other)
        if a is None:
            return NotImplemented
        return CycNum(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b = self._promote_with(other)
        if a is None:
            return NotImplemented
        n = a.conductor
        out = [Fraction(0)] * (2 * phi(n))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] += x * y
        return CycNum(n, _reduce(n, out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.conductor
        mod = [Fraction(c) for c in _min_poly_coeffs(n)]
        g, s, _ = _poly_xgcd(list(self.coeffs), mod)
        # The modulus is irreducible over Q, so the gcd is a nonzero constant.
        if len(g) != 1 or g[0] == 0:
            raise ArithmeticError("gcd with the cyclotomic polynomial not constant")
        inv = [c / g[0] for c in s]
        return CycNum(n, _reduce(n, inv))

    def __truediv__(self, other):
        a, b = self._promote_with(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        frac = _coerce_fraction(other)
        if frac is None:
            return NotImplemented
        return CycNum.from_rational(frac) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNum.from_rational(1).lift(self.conductor)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CycNum":
        """Complex conjugation: the automorphism zeta_N -> zeta_N^(N-1)."""
        n = self.conductor
        if n <= 2:
            return self
        out = [Fraction(0)] * ((phi(n) - 1) * (n - 1) + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * (n - 1)] += c
        return CycNum(n, _reduce(n, out))

    # -- display -------------------------------------------------------------

    def __repr__(self):
        n = self.conductor
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = f"z{n}" if i == 1 else f"z{n}^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text


def cyc(value, conductor: int = 1) -> CycNum:
    """Embed a rational (int or Fraction) at the given conductor."""
    return CycNum.from_rational(value).lift(conductor)


def root_of_unity(conductor: int, power: int = 1) -> CycNum:
    """zeta_N^k, reduced canonically; root_of_unity(N, 0) is 1."""
    if conductor < 1:
        raise ValueError("conductor must be positive")
    k = power % conductor
    out = [Fraction(0)] * (k + 1)
    out[k] = Fraction(1)
    return CycNum(conductor, _reduce(conductor, out))


ZERO = CycNum.from_rational(0)
ONE = CycNum.from_rational(1)


def _coerce_cyc(value) -> CycNum | None:
    if isinstance(value, CycNum):
        return value
    frac = _coerce_fraction(value)
    if frac is None:
        return None
    return CycNum.from_rational(frac)


class CycMatrix:
    """A dense matrix over one cyclotomic field, immutable and exact."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        flat = []
        for e in entries:
            v = _coerce_cyc(e)
            if v is None:
                raise TypeError(f"cannot coerce {e!r} to a cyclotomic number")
            flat.append(v)
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        n = 1
        for v in flat:
            n = lcm(n, v.conductor)
        flat = tuple(v.lift(n) for v in flat)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", flat)

    def __setattr__(self, name, value):
        raise AttributeError("CycMatrix is immutable")

    __hash__ = None

    # -- construction ---------------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "CycMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return CycMatrix(len(rows), width, [e for r in rows for e in r])

    @staticmethod
    def identity(n: int) -> "CycMatrix":
        return CycMatrix(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def diagonal(values) -> "CycMatrix":
        values = list(values)
        n = len(values)
        entries = [values[i] if i == j else 0 for i in range(n) for j in range(n)]
        return CycMatrix(n, n, entries)

    @staticmethod
    def zeros(rows: int, cols: int) -> "CycMatrix":
        return CycMatrix(rows, cols, [0] * (rows * cols))

    def conductor(self) -> int:
        return self.entries[0].conductor if self.entries else 1

    def entry(self, i: int, j: int) -> CycNum:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[CycNum, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    # -- arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for a, b in zip(self.entries, other.entries))

    def __add__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        return CycMatrix(
            self.rows, self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return CycMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scaled(self, factor) -> "CycMatrix":
        f = _coerce_cyc(factor)
        if f is None:
            raise TypeError(f"cannot scale by {factor!r}")
        return CycMatrix(self.rows, self.cols, [f * a for a in self.entries])

    def __mul__(self, other):
        if isinstance(other, CycMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            n = lcm(self.conductor(), other.conductor())
            zero = cyc(0, n)
            out = []
            cols = [other.column(j) for j in range(other.cols)]
            for i in range(self.rows):
                r = self.row(i)
                for j in range(other.cols):
                    acc = zero
                    for a, b in zip(r, cols[j]):
                        if a and b:
                            acc = acc + a * b
                    out.append(acc)
            return CycMatrix(self.rows, other.cols, out)
        if _coerce_cyc(other) is not None:
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if _coerce_cyc(other) is not None:
            return self.scaled(other)
        return NotImplemented

    def column(self, j: int) -> tuple[CycNum, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        if self.rows != self.cols:
            raise ValueError("powers need a square matrix")
        result = CycMatrix.identity(self.rows)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> "CycMatrix":
        return CycMatrix(
            self.cols, self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def conjugate(self) -> "CycMatrix":
        return CycMatrix(self.rows, self.cols, [a.conjugate() for a in self.entries])

    def trace(self) -> CycNum:
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        acc = cyc(0, self.conductor())
        for i in range(self.rows):
            acc = acc + self.entry(i, i)
        return acc

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == CycMatrix.identity(self.rows)

    def multiplicative_order(self, bound: int = 120) -> int:
        """Smallest k >= 1 with self^k = I; error if none up to the bound."""
        if self.rows != self.cols:
            raise ValueError("order needs a square matrix")
        power = self
        for k in range(1, bound + 1):
            if power.is_identity():
                return k
            power = power * self
        raise ValueError(f"no multiplicative order up to {bound}")

    # -- elimination-based queries ---------------------------------------------

    def _echelon(self):
        # Fraction-free (Bareiss) elimination; returns (pivot count, last pivot,
        # parity of row swaps). The last pivot of a full-rank square matrix is
        # its determinant.
        n = lcm(1, self.conductor())
        work = [list(self.row(i)) for i in range(self.rows)]
        rows, cols = self.rows, self.cols
        prev = cyc(1, n)
        sign = 1
        pivot_row = 0
        last_pivot = cyc(1, n)
        for col in range(cols):
            if pivot_row >= rows:
                break
            pivot = None
            for r in range(pivot_row, rows):
                if work[r][col]:
                    pivot = r
                    break
            if pivot is None:
                continue
            if pivot != pivot_row:
                work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
                sign = -sign
            p = work[pivot_row][col]
            for r in range(pivot_row + 1, rows):
                for c in range(col + 1, cols):
                    num = p * work[r][c] - work[r][col] * work[pivot_row][c]
                    work[r][c] = num / prev
                work[r][col] = cyc(0, n)
            prev = p
            last_pivot = p
            pivot_row += 1
        return pivot_row, last_pivot, sign

    def rank(self) -> int:
        pivots, _, _ = self._echelon()
        return pivots

    def nullity(self) -> int:
        return self.cols - self.rank()

    def det(self) -> CycNum:
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        pivots, last, sign = self._echelon()
        if pivots < self.rows:
            return cyc(0, self.conductor())
        return last if sign == 1 else -last

    def charpoly(self) -> tuple[CycNum, ...]:
        """Coefficients of det(xI - M), constant term first, leading 1 last."""
        if self.rows != self.cols:
            raise ValueError("characteristic polynomial needs a square matrix")
        n = self.rows
        # Faddeev-LeVerrier: divisions are by the integers 1..n only.
        coeffs = [cyc(0)] * (n + 1)
        coeffs[n] = cyc(1)
        m = CycMatrix.zeros(n, n)
        ident = CycMatrix.identity(n)
        for k in range(1, n + 1):
            m = self * m + coeffs[n - k + 1] * ident
            prod = self * m
            coeffs[n - k] = prod.trace() * Fraction(-1, k)
        return tuple(coeffs)


def eigenvalue_profile(m: CycMatrix, element_order: int):
    """Exact eigenvalues of a finite-order matrix, as (order, exponent) labels.

    Requires m^element_order = I (checked). Each eigenvalue is a root of unity
    zeta_d^k with d dividing element_order and gcd(k, d) = 1; its multiplicity
    is the nullity of m - zeta*I. Returns a sorted tuple of (d, k) labels with
    repetitions, of total length equal to the matrix size.
    """
    if m.rows != m.cols:
        raise ValueError("eigenvalue profile needs a square matrix")
    if element_order < 1:
        raise ValueError("element order must be positive")
    if not (m ** element_order).is_identity():
        raise ValueError(f"matrix is not of finite order dividing {element_order}")
    labels = []
    ident = CycMatrix.identity(m.rows)
    for d in sorted(_divisors(element_order)):
        for k in range(d):
            if d == 1:
                if k != 0:
                    continue
            elif gcd(k, d) != 1:
                continue
            value = root_of_unity(d, k)
            mult = (m - ident.scaled(value)).nullity()
            labels.extend([(d, k)] * mult)
    if len(labels) != m.rows:
        raise ArithmeticError("eigenvalue multiplicities do not sum to the size")
    return tuple(sorted(labels))


def has_eigenvalue_one(m: CycMatrix) -> bool:
    """True iff 1 is an eigenvalue: rank(m - I) < size."""
    if m.rows != m.cols:
        raise ValueError("needs a square matrix")
    return (m - CycMatrix.identity(m.rows)).rank() < m.rows


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def solve_exact(a: CycMatrix, b: CycMatrix):
    """Solve a X = b exactly; returns X or None when inconsistent.

    Handles overdetermined consistent systems. When the solution is not
    unique, free variables are set to zero.
    """
    if a.rows != b.rows:
        raise ValueError("row mismatch in linear solve")
    n = lcm(a.conductor(), b.conductor())
    zero = cyc(0, n)
    work = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    cols = a.cols
    total = cols + b.cols
    pivot_cols = []
    pivot_row = 0
    for col in range(cols):
        sel = None
        for r in range(pivot_row, len(work)):
            if work[r][col]:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = work[pivot_row][col].inverse()
        work[pivot_row] = [inv * v for v in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                f = work[r][col]
                work[r] = [
                    work[r][c] - f * work[pivot_row][c] for c in range(total)
                ]
        pivot_cols.append(col)
        pivot_row += 1
    for r in range(pivot_row, len(work)):
        if any(work[r][c] for c in range(cols, total)):
            return None
    out = [[zero] * b.cols for _ in range(cols)]
    for idx, col in enumerate(pivot_cols):
        for j in range(b.cols):
            out[col][j] = work[idx][cols + j]
    return CycMatrix.from_rows(out)


def kernel_basis(a: CycMatrix):
    """A basis of the right kernel of a, as a list of column vectors."""
    n = a.conductor()
    zero, one = cyc(0, n), cyc(1, n)
    work = [list(a.row(i)) for i in range(a.rows)]
    cols = a.cols
    pivot_cols = []
    pivot_row = 0
    for col in range(cols):
        sel = None
        for r in range(pivot_row, len(work)):
            if work[r][col]:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = work[pivot_row][col].inverse()
        work[pivot_row] = [inv * v for v in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                f = work[r][col]
                work[r] = [work[r][c] - f * work[pivot_row][c] for c in range(cols)]
        pivot_cols.append(col)
        pivot_row += 1
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [zero] * cols
        vec[free] = one
        for idx, col in enumerate(pivot_cols):
            vec[col] = -work[idx][free]
        basis.append(vec)
    return basis


def block_diag(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """Block-diagonal sum of two square matrices."""
    n, m = a.rows, b.rows
    zero = cyc(0)
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + [zero] * m)
    for i in range(m):
        rows.append([zero] * n + list(b.row(i)))
    return CycMatrix.from_rows(rows)


def wedge_square_matrix(m: CycMatrix) -> CycMatrix:
    """The induced action of a square matrix on the second exterior power.

    Basis: e_i ^ e_j for i < j in lexicographic order. Entry at
    ((k,l), (i,j)) is m[k][i] m[l][j] - m[k][j] m[l][i], the 2x2 minor.
    """
    if m.rows != m.cols:
        raise ValueError("wedge square needs a square matrix")
    n = m.rows
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = []
    for (k, l) in pairs:
        row = []
        for (i, j) in pairs:
            row.append(
                m.entry(k, i) * m.entry(l, j) - m.entry(k, j) * m.entry(l, i)
            )
        rows.append(row)
    return CycMatrix.from_rows(rows)
