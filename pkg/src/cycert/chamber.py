"""Integral quadratic lattices and reflection-chamber arithmetic.

A :class:`QuadLattice` is a free Z-module of finite rank carrying a
nondegenerate symmetric integer pairing.  Walls are lattice vectors of
self-pairing -2, grouped into pairwise-orthogonal families
(:class:`NodalOrbitClass`).  This module provides the reflection in a
single wall, the simultaneous reflection across a family, membership in
the chamber cut out by a finite wall system, a reduction walk that moves
a vector into the chamber while recording a replayable word, and a box
search for primitive isotropic vectors.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterator, Optional, Sequence

__all__ = [
    "QuadLattice",
    "NodalOrbitClass",
    "ChamberWalkError",
    "reflect_single",
    "orbit_reflection",
    "chamber_test",
    "reflect_into_chamber",
    "isotropic_search",
    "DEFAULT_STEP_CAP",
]

DEFAULT_STEP_CAP = int(os.environ.get("CYCERT_MAX_CHAMBER_STEPS", 10**6))

WALL_NORM = -2


def _signature_of(rows: Sequence[Sequence[int]]) -> tuple[int, int]:
    # Symmetric Gaussian elimination over the rationals; the number of
    # pivots found equals the rank of the form, so a degenerate matrix is
    # detected by pos + neg < n.
    n = len(rows)
    m = [[Fraction(v) for v in row] for row in rows]

    def swap(i: int, k: int) -> None:
        m[i], m[k] = m[k], m[i]
        for row in m:
            row[i], row[k] = row[k], row[i]

    def add_into(i: int, k: int) -> None:
        for t in range(n):
            m[i][t] += m[k][t]
        for t in range(n):
            m[t][i] += m[t][k]

    pos = neg = 0
    for i in range(n):
        if m[i][i] == 0:
            k = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if k is not None:
                swap(i, k)
            else:
                k = next((j for j in range(i + 1, n) if m[i][j] != 0), None)
                if k is None:
                    continue
                add_into(i, k)
        d = m[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if m[i][j] == 0:
                continue
            c = m[i][j] / d
            for t in range(n):
                m[j][t] -= c * m[i][t]
            for t in range(n):
                m[t][j] -= c * m[t][i]
    return pos, neg


class QuadLattice:
    """A finite-rank integer lattice with a nondegenerate symmetric pairing."""

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = tuple(tuple(v for v in row) for row in gram)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("gram matrix must be square and nonempty")
        for row in rows:
            for v in row:
                if not isinstance(v, int):
                    raise TypeError(f"gram entries must be integers, got {v!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        pos, neg = _signature_of(rows)
        if pos + neg != n:
            raise ValueError("gram matrix must be nondegenerate")
        self.gram = rows
        self.rank = n
        self._signature = (pos, neg)

    def signature(self) -> tuple[int, int]:
        """Numbers of positive and negative squares of the pairing."""
        return self._signature

    def coerce(self, x: Sequence[int]) -> tuple[int, ...]:
        v = tuple(x)
        if len(v) != self.rank:
            raise ValueError(f"vector length {len(v)} does not match rank {self.rank}")
        for c in v:
            if not isinstance(c, int):
                raise TypeError(f"lattice vectors must have integer coordinates, got {c!r}")
        return v

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        a = self.coerce(x)
        b = self.coerce(y)
        return sum(
            a[i] * self.gram[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if self.gram[i][j] != 0
        )

    def norm(self, x: Sequence[int]) -> int:
        return self.pairing(x, x)

    def __repr__(self) -> str:
        return f"QuadLattice(rank={self.rank}, signature={self._signature})"


class NodalOrbitClass:
    """A family of pairwise-orthogonal walls, each of self-pairing -2.

    Orthogonality makes the member reflections commute, so the product of
    all of them is a well-defined involution of the lattice.
    """

    def __init__(self, lattice: QuadLattice, vectors: Sequence[Sequence[int]]):
        if not isinstance(lattice, QuadLattice):
            raise TypeError("lattice must be a QuadLattice")
        vecs = tuple(lattice.coerce(v) for v in vectors)
        if not vecs:
            raise ValueError("a wall family needs at least one vector")
        for i, b in enumerate(vecs):
            n = lattice.norm(b)
            if n != WALL_NORM:
                raise ValueError(f"wall {i} has self-pairing {n}, expected {WALL_NORM}")
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                p = lattice.pairing(vecs[i], vecs[j])
                if p != 0:
                    raise ValueError(f"walls {i} and {j} are not orthogonal (pairing {p})")
        self.lattice = lattice
        self.vectors = vecs

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.vectors)

    def __repr__(self) -> str:
        return f"NodalOrbitClass({len(self.vectors)} walls, rank {self.lattice.rank})"


class ChamberWalkError(RuntimeError):
    """The chamber walk could not finish; carries the partial reflection word."""

    def __init__(self, message: str, word: Sequence[int]):
        super().__init__(message)
        self.word = tuple(word)


def _check_same_lattice(lattice: QuadLattice, orbits: Sequence[NodalOrbitClass]) -> None:
    for k, orbit in enumerate(orbits):
        if orbit.lattice.gram != lattice.gram:
            raise ValueError(f"wall family {k} lives on a different lattice")


def reflect_single(lattice: QuadLattice, x: Sequence[int], wall: Sequence[int]) -> tuple[int, ...]:
    """Reflect ``x`` in a single wall: x + (x.wall) wall.

    The formula is an involution exactly because the wall has
    self-pairing -2, so the wall norm is checked up front.
    """
    b = lattice.coerce(wall)
    n = lattice.norm(b)
    if n != WALL_NORM:
        raise ValueError(f"wall has self-pairing {n}, expected {WALL_NORM}")
    v = lattice.coerce(x)
    c = lattice.pairing(v, b)
    return tuple(v[i] + c * b[i] for i in range(lattice.rank))


def orbit_reflection(lattice: QuadLattice, x: Sequence[int], orbit: NodalOrbitClass) -> tuple[int, ...]:
    """Simultaneous reflection of ``x`` across every wall of a family.

    Equals the composition of the single reflections in any order, since
    the walls are mutually orthogonal.
    """
    _check_same_lattice(lattice, [orbit])
    v = lattice.coerce(x)
    out = list(v)
    for b in orbit.vectors:
        c = lattice.pairing(v, b)
        for i in range(lattice.rank):
            out[i] += c * b[i]
    return tuple(out)


def chamber_test(lattice: QuadLattice, x: Sequence[int], orbits: Sequence[NodalOrbitClass]) -> bool:
    """True iff ``x`` pairs nonnegatively with every wall of every family."""
    orbits = tuple(orbits)
    _check_same_lattice(lattice, orbits)
    v = lattice.coerce(x)
    return all(lattice.pairing(v, b) >= 0 for orbit in orbits for b in orbit)


def reflect_into_chamber(
    lattice: QuadLattice,
    x: Sequence[int],
    orbits: Sequence[NodalOrbitClass],
    reference: Optional[Sequence[int]] = None,
    step_cap: Optional[int] = None,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reflect ``x`` across violated wall families until it lies in the chamber.

    Wall choice is deterministic: the most negative pairing wins, ties go
    to the lowest family index.  Returns the reduced vector and the word
    of family indices; replaying the word through
    :func:`orbit_reflection` reproduces the output exactly.

    When ``reference`` is supplied it must have positive self-pairing and
    pair strictly positively with every wall; the walk then checks that
    the pairing with it never increases.  For wall systems where that
    pairing is a positive integer this is what forces termination; the
    step cap converts any remaining divergence into an error carrying the
    partial word.
    """
    orbits = tuple(orbits)
    _check_same_lattice(lattice, orbits)
    v = list(lattice.coerce(x))
    cap = DEFAULT_STEP_CAP if step_cap is None else int(step_cap)
    height = None
    if reference is not None:
        h = lattice.coerce(reference)
        if lattice.norm(h) <= 0:
            raise ValueError("reference vector must have positive self-pairing")
        for k, orbit in enumerate(orbits):
            for b in orbit:
                if lattice.pairing(h, b) <= 0:
                    raise ValueError(f"reference vector does not pair positively with family {k}")
        if lattice.norm(v) < 0:
            raise ValueError("walk with a reference vector requires nonnegative self-pairing")
        height = lattice.pairing(v, h)

    word: list[int] = []
    while True:
        worst = None
        worst_index = None
        for k, orbit in enumerate(orbits):
            for b in orbit:
                c = lattice.pairing(v, b)
                if c < 0 and (worst is None or c < worst):
                    worst = c
                    worst_index = k
        if worst is None:
            return tuple(v), tuple(word)
        if len(word) >= cap:
            raise ChamberWalkError(f"chamber walk exceeded {cap} reflections", word)
        v = list(orbit_reflection(lattice, v, orbits[worst_index]))
        word.append(worst_index)
        if height is not None:
            new_height = lattice.pairing(v, reference)
            if new_height > height:
                raise ChamberWalkError(
                    "pairing with the reference vector increased during the walk", word
                )
            height = new_height


def isotropic_search(lattice: QuadLattice, bound: int) -> Optional[tuple[int, ...]]:
    """Search the coordinate box [-bound, bound]^rank for a primitive isotropic vector.

    Scans coefficient vectors in lexicographic order and returns the
    first primitive one of self-pairing zero, sign-normalized so that its
    leading nonzero coordinate is positive.  Returns None when the box
    contains no such vector.  A vector found at some bound is found at
    every larger bound, since enlarging the box only appends candidates.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    for coords in product(range(-bound, bound + 1), repeat=lattice.rank):
        if all(c == 0 for c in coords):
            continue
        if gcd(*coords) != 1:
            continue
        if lattice.norm(coords) == 0:
            lead = next(c for c in coords if c != 0)
            if lead < 0:
                return tuple(-c for c in coords)
            return tuple(coords)
    return None
