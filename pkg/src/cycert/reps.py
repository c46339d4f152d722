"""Exact complex representations and characters of the catalog groups.

Irreducible tables are provided for dihedral groups (including the order-18
generalized dihedral group over C3 x C3), binary dihedral groups, A4, and
abelian catalog groups. Matrices are exact cyclotomic; equivalence testing
and decomposition go through characters, which is faithful over C.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycMatrix, CycNum, cyc, root_of_unity
from .groups import FiniteGroup


class Representation:
    """A matrix representation, stored on generators, extended to the group.

    The extension walks the multiplication table; the constructor then checks
    the homomorphism property on every pair of elements, so an inconsistent
    set of generator images cannot survive construction.
    """

    __slots__ = ("group", "degree", "images", "name")

    def __init__(self, group: FiniteGroup, generator_images, name: str = ""):
        gen_list = list(group.generators)
        mats = [generator_images[g] for g in gen_list]
        if not mats:
            raise ValueError("group has no generators")
        degree = mats[0].rows
        if any(m.rows != degree or m.cols != degree for m in mats):
            raise ValueError("generator images must be square of equal size")
        images: list = [None] * group.order
        images[group.identity] = CycMatrix.identity(degree)
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, mg in zip(gen_list, mats):
                    y = group.mul[x][g]
                    prod = images[x] * mg
                    if images[y] is None:
                        images[y] = prod
                        nxt.append(y)
                    elif images[y] != prod:
                        raise ValueError("generator images are inconsistent")
            frontier = nxt
        if any(m is None for m in images):
            raise ValueError("generators do not reach the whole group")
        for a in range(group.order):
            for b in range(group.order):
                if images[group.mul[a][b]] != images[a] * images[b]:
                    raise ValueError("not a homomorphism")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "images", tuple(images))
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def __repr__(self):
        label = self.name or "rep"
        return f"<{label}: degree {self.degree} of {self.group!r}>"

    def image(self, element: int) -> CycMatrix:
        return self.images[element]

    def is_faithful(self) -> bool:
        return (
            sum(1 for m in self.images if m.is_identity()) == 1
        )

    def is_special_linear(self) -> bool:
        one = cyc(1)
        return all(m.det() == one for m in self.images)


class CharacterVector:
    """A class function on a group, one exact value per element."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        values = tuple(v if isinstance(v, CycNum) else cyc(v) for v in values)
        if len(values) != group.order:
            raise ValueError("need one value per element")
        for cls in group.conjugacy_classes():
            first = values[cls[0]]
            if any(values[x] != first for x in cls[1:]):
                raise ValueError("values are not constant on conjugacy classes")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("CharacterVector is immutable")

    def __eq__(self, other):
        if not isinstance(other, CharacterVector):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    __hash__ = None

    def __add__(self, other):
        if self.group is not other.group:
            raise ValueError("characters live on different groups")
        return CharacterVector(
            self.group, [a + b for a, b in zip(self.values, other.values)]
        )

    def conjugate(self):
        return CharacterVector(self.group, [v.conjugate() for v in self.values])


def character(rep: Representation) -> CharacterVector:
    return CharacterVector(rep.group, [m.trace() for m in rep.images])


def inner_product(chi: CharacterVector, psi: CharacterVector) -> Fraction:
    """Standard character inner product; must come out rational."""
    if chi.group is not psi.group:
        raise ValueError("characters live on different groups")
    total = cyc(0)
    for a, b in zip(chi.values, psi.values):
        total = total + a * b.conjugate()
    if not total.is_rational():
        raise ArithmeticError("character inner product is not rational")
    return total.as_fraction() / chi.group.order

def invariant_dimension(chi: CharacterVector) -> int:
    """Dimension of the fixed subspace: the average of the character."""
    total = cyc(0)
    for v in chi.values:
        total = total + v
    if not total.is_rational():
        raise ArithmeticError("character average is not rational")
    avg = total.as_fraction() / chi.group.order
    if avg.denominator != 1 or avg < 0:
        raise ArithmeticError(f"character average {avg} is not a dimension")
    return int(avg)


def realified_character(chi: CharacterVector) -> CharacterVector:
    """Character of V + conj(V), the complexified real form of V."""
    return chi + chi.conjugate()


def wedge_square_character(chi: CharacterVector) -> CharacterVector:
    """Character of the second exterior power: g -> (chi(g)^2 - chi(g^2))/2."""
    g = chi.group
    half = cyc(Fraction(1, 2))
    vals = []
    for x in range(g.order):
        x2 = g.mul[x][x]
        vals.append(half * (chi.values[x] * chi.values[x] - chi.values[x2]))
    return CharacterVector(g, vals)


def direct_sum(*reps: Representation) -> Representation:
    """Block-diagonal sum of representations of one group."""
    from .cyclo import block_diag

    if not reps:
        raise ValueError("need at least one summand")
    group = reps[0].group
    if any(r.group is not group for r in reps):
        raise ValueError("summands live on different groups")
    gen_images = {}
    for g in group.generators:
        m = reps[0].image(g)
        for r in reps[1:]:
            m = block_diag(m, r.image(g))
        gen_images[g] = m
    name = "+".join(r.name or "rep" for r in reps)
    return Representation(group, gen_images, name=name)


def decompose(rep_or_chi, catalog=None) -> dict[str, int]:
    """Multiplicities of the catalog irreps, keyed by irrep name.

    Asserts the reconstruction identity, so a character outside the span of
    the catalog cannot slip through.
    """
    if isinstance(rep_or_chi, Representation):
        chi = character(rep_or_chi)
    else:
        chi = rep_or_chi
    group = chi.group
    if catalog is None:
        catalog = irrep_catalog(group)
    out: dict[str, int] = {}
    recon = [cyc(0)] * group.order
    for irr in catalog:
        psi = character(irr)
        m = inner_product(chi, psi)
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(f"multiplicity {m} of {irr.name} not integral")
        m = int(m)
        if m:
            out[irr.name] = m
            for x in range(group.order):
                recon[x] = recon[x] + cyc(m) * psi.values[x]
    if any(recon[x] != chi.values[x] for x in range(group.order)):
        raise ArithmeticError("character is not a sum of catalog irreps")
    return out


# -- irreducible catalogs ---------------------------------------------------------


def _exponent_walk(group: FiniteGroup, gens):
    """Exponent vectors over the given generators for each reachable element.

    Requires the generators to be independent (orders multiply to the size of
    what they generate); asserted by bijectivity of the walk.
    """
    orders = [group.element_order(g) for g in gens]
    elems = {group.identity: tuple(0 for _ in gens)}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = group.mul[x][g]
                if y not in elems:
                    e = list(elems[x])
                    e[i] = (e[i] + 1) % orders[i]
                    elems[y] = tuple(e)
                    nxt.append(y)
        frontier = nxt
    return elems, orders


def _abelian_characters(group: FiniteGroup):
    """The character group of an abelian group with independent generators."""
    if not group.is_abelian():
        raise ValueError("character-group construction needs an abelian group")
    gens = list(group.generators)
    elems, orders = _exponent_walk(group, gens)
    if len(elems) != group.order:
        raise ValueError("generators do not reach the whole group")
    total = 1
    for o in orders:
        total *= o
    if total != group.order:
        raise ValueError("catalog abelian groups need independent generators")
    from itertools import product as iproduct

    reps = []
    for idx, t in enumerate(iproduct(*(range(o) for o in orders))):
        gen_images = {}
        for i, g in enumerate(gens):
            gen_images[g] = CycMatrix.from_rows(
                [[root_of_unity(orders[i], t[i])]]
            )
        reps.append(Representation(group, gen_images, name=f"chr{idx}"))
    return reps


def _generalized_dihedral_irreps(group: FiniteGroup, h_gens, iota):
    """Irreps of H : C2 with H abelian, normal, inverted by the involution.

    Squares of characters of H that are trivial extend in two ways (the
    involution maps to +1 or -1); the remaining characters pair off with
    their conjugates into irreducible 2-dimensional representations
    t -> diag(chi(t), conj chi(t)), involution -> antidiag(1, 1).
    """
    h_elems, orders = _exponent_walk(group, h_gens)
    if 2 * len(h_elems) != group.order:
        raise ValueError("abelian part must have index 2")
    if group.element_order(iota) != 2:
        raise ValueError("second part must be an involution")
    for t in h_elems:
        if group.conjugate(iota, t) != group.inverse[t]:
            raise ValueError("involution must invert the abelian part")
    total = 1
    for o in orders:
        total *= o
    if total != len(h_elems):
        raise ValueError("abelian-part generators must be independent")

    from itertools import product as iproduct

    def chi_value(t_exp, e):
        v = cyc(1)
        for i, o in enumerate(orders):
            v = v * root_of_unity(o, (t_exp[i] * e[i]) % o)
        return v

    reps = []
    idx = 0
    seen_pairs = set()
    for t in iproduct(*(range(o) for o in orders)):
        is_real = all((2 * t[i]) % o == 0 for i, o in enumerate(orders))
        if is_real:
            for sign in (1, -1):
                gen_images = {}
                for i, g in enumerate(h_gens):
                    e = tuple(1 if j == i else 0 for j in range(len(h_gens)))
                    gen_images[g] = CycMatrix.from_rows([[chi_value(t, e)]])
                gen_images[iota] = CycMatrix.from_rows([[cyc(sign)]])
                reps.append(Representation(group, gen_images, name=f"lin{idx}"))
                idx += 1
        else:
            t_bar = tuple((-t[i]) % o for i, o in enumerate(orders))
            key = min(t, t_bar)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            gen_images = {}
            for i, g in enumerate(h_gens):
                e = tuple(1 if j == i else 0 for j in range(len(h_gens)))
                gen_images[g] = CycMatrix.diagonal(
                    [chi_value(t, e), chi_value(t_bar, e)]
                )
            gen_images[iota] = CycMatrix.from_rows([[cyc(0), cyc(1)], [cyc(1), cyc(0)]])
            reps.append(Representation(group, gen_images, name=f"pln{idx}"))
            idx += 1
    return reps


def _binary_dihedral_irreps(group: FiniteGroup):
    """Irreps of the dicyclic group of order 4n on generators (a, b)."""
    a, b = group.generators
    two_n = group.element_order(a)
    n = two_n // 2
    reps = []
    idx = 0
    # Degree 1: factor through the abelianization (C2+C2 or C4).
    if n % 2 == 0:
        for sa in (1, -1):
            for sb in (1, -1):
                reps.append(Representation(
                    group,
                    {a: CycMatrix.from_rows([[cyc(sa)]]),
                     b: CycMatrix.from_rows([[cyc(sb)]])},
                    name=f"lin{idx}",
                ))
                idx += 1
    else:
        i4 = root_of_unity(4)
        for va, vb in ((cyc(1), cyc(1)), (cyc(1), cyc(-1)),
                       (cyc(-1), i4), (cyc(-1), -i4)):
            reps.append(Representation(
                group,
                {a: CycMatrix.from_rows([[va]]),
                 b: CycMatrix.from_rows([[vb]])},
                name=f"lin{idx}",
            ))
            idx += 1
    # Degree 2, one per 1 <= l <= n-1.
    for l in range(1, n):
        za = root_of_unity(two_n, l)
        mat_a = CycMatrix.diagonal([za, za.inverse()])
        mat_b = CycMatrix.from_rows(
            [[cyc(0), cyc(1)], [cyc((-1) ** l), cyc(0)]]
        )
        reps.append(Representation(group, {a: mat_a, b: mat_b}, name=f"pln{idx}"))
        idx += 1
    return reps


def _a4_irreps(group: FiniteGroup):
    """Irreps of A4 on generators (3-cycle a, double transposition b)."""
    a, b = group.generators
    reps = []
    for j in range(3):
        reps.append(Representation(
            group,
            {a: CycMatrix.from_rows([[root_of_unity(3, j)]]),
             b: CycMatrix.from_rows([[cyc(1)]])},
            name=f"lin{j}",
        ))
    mat_a = CycMatrix.from_rows(
        [[cyc(0), cyc(0), cyc(1)], [cyc(1), cyc(0), cyc(0)], [cyc(0), cyc(1), cyc(0)]]
    )
    mat_b = CycMatrix.diagonal([cyc(1), cyc(-1), cyc(-1)])
    reps.append(Representation(group, {a: mat_a, b: mat_b}, name="trp3"))
    return reps


def irrep_catalog(group: FiniteGroup):
    """The full list of irreducibles for a catalog group.

    Covered: abelian catalog groups, dihedral groups (with the order-18
    generalized dihedral group), binary dihedral groups, and A4. The list is
    validated: sum of squared degrees, one irrep per conjugacy class, and
    pairwise-distinct characters.
    """
    name = group.name
    if group.is_abelian():
        reps = _abelian_characters(group)
    elif name.startswith("D"):
        a, b = group.generators
        reps = _generalized_dihedral_irreps(group, [a], b)
    elif name.endswith(":C2"):
        # Inverting extensions list the commutative part's generators first
        # and the involution last.
        *h_gens, iota = group.generators
        reps = _generalized_dihedral_irreps(group, h_gens, iota)
    elif name.startswith("Q"):
        reps = _binary_dihedral_irreps(group)
    elif name == "A4":
        reps = _a4_irreps(group)
    else:
        raise ValueError(f"no irreducible catalog for group {name!r}")

    if sum(r.degree ** 2 for r in reps) != group.order:
        raise ArithmeticError("degrees do not account for the group order")
    if len(reps) != len(group.conjugacy_classes()):
        raise ArithmeticError("irrep count differs from class count")
    chars = [character(r).values for r in reps]
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            if chars[i] == chars[j]:
                raise ArithmeticError("catalog contains equivalent irreps")
    return reps
