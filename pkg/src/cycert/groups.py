"""Small finite groups as explicit multiplication tables.

Groups are built from faithful realizations (residues, permutations, tuples
with a twisted product) chosen per family, then checked exhaustively: full
associativity, identity, two-sided inverses. The supported bound is order 48,
enough for every group this package reasons about.

The order-24 catalog consists of fifteen semidirect constructions labeled
I1 .. V4, grouped by the isomorphism type of their 2-Sylow subgroup
(I: C8, II: C2+C4, III: C2^3, IV: Q8, V: D8).
"""

from __future__ import annotations

from itertools import product

MAX_ORDER = 48


class FiniteGroup:
    """A finite group as an explicit multiplication table over 0..order-1."""

    __slots__ = ("order", "mul", "identity", "inverse", "generators", "name")

    def __init__(self, mul, name: str = "", generators=None):
        mul = tuple(tuple(row) for row in mul)
        order = len(mul)
        if order == 0 or order > MAX_ORDER:
            raise ValueError(f"supported group orders are 1..{MAX_ORDER}")
        if any(len(row) != order for row in mul):
            raise ValueError("multiplication table must be square")
        for row in mul:
            for v in row:
                if not (0 <= v < order):
                    raise ValueError("table entry out of range")
        identity = None
        for e in range(order):
            if all(mul[e][x] == x and mul[x][e] == x for x in range(order)):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element")
        # Exhaustive associativity: the bound keeps this cheap.
        for a in range(order):
            for b in range(order):
                ab = mul[a][b]
                row_a = mul[a]
                for c in range(order):
                    if mul[ab][c] != row_a[mul[b][c]]:
                        raise ValueError("associativity fails")
        inverse = [None] * order
        for a in range(order):
            for b in range(order):
                if mul[a][b] == identity and mul[b][a] == identity:
                    inverse[a] = b
                    break
            if inverse[a] is None:
                raise ValueError("missing inverse")
        if generators is None:
            generators = tuple(range(order))
        generators = tuple(generators)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverse", tuple(inverse))
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "name", name)
        if self.closure(generators) != frozenset(range(order)):
            raise ValueError("generators do not generate the group")

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def __repr__(self):
        label = self.name or "group"
        return f"<{label}, order {self.order}>"

    # -- basic queries ---------------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conjugate(self, g: int, x: int) -> int:
        # g^-1 x g
        return self.mul[self.mul[self.inverse[g]][x]][g]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[a], -k)
        x = self.identity
        for _ in range(k):
            x = self.mul[x][a]
        return x

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def center(self) -> frozenset[int]:
        return frozenset(
            a for a in range(self.order)
            if all(self.mul[a][b] == self.mul[b][a] for b in range(self.order))
        )

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = {self.conjugate(g, a) for g in range(self.order)}
            seen |= cls
            classes.append(tuple(sorted(cls)))
        return tuple(classes)

    def closure(self, seed) -> frozenset[int]:
        out = {self.identity, *seed}
        frontier = list(out)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(out):
                    for c in (self.mul[a][b], self.mul[b][a]):
                        if c not in out:
                            out.add(c)
                            nxt.append(c)
            frontier = nxt
        return frozenset(out)

    # -- subgroup machinery ------------------------------------------------------

    def subgroups(self) -> tuple[frozenset[int], ...]:
        """All subgroups, by incremental closure growth (exhaustive)."""
        found = {frozenset({self.identity})}
        frontier = list(found)
        while frontier:
            nxt = []
            for sub in frontier:
                for g in range(self.order):
                    if g in sub:
                        continue
                    grown = self.closure(sub | {g})
                    if grown not in found:
                        found.add(grown)
                        nxt.append(grown)
            frontier = nxt
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def subgroups_of_order(self, k: int) -> tuple[frozenset[int], ...]:
        return tuple(s for s in self.subgroups() if len(s) == k)

    def is_normal(self, subgroup) -> bool:
        sub = frozenset(subgroup)
        return all(
            self.conjugate(g, x) in sub for g in range(self.order) for x in sub
        )

    def is_subgroup_abelian(self, subgroup) -> bool:
        sub = list(subgroup)
        return all(
            self.mul[a][b] == self.mul[b][a]
            for i, a in enumerate(sub)
            for b in sub[i + 1 :]
        )

    def sylow(self, p: int) -> frozenset[int]:
        target = 1
        while self.order % (target * p) == 0:
            target *= p
        for sub in self.subgroups_of_order(target):
            return sub
        raise ArithmeticError("Sylow subgroup missing")  # cannot happen

    def maximal_normal_abelian_subgroups(self) -> tuple[frozenset[int], ...]:
        """Normal abelian subgroups of the largest order achieved."""
        candidates = [
            s for s in self.subgroups()
            if self.is_normal(s) and self.is_subgroup_abelian(s)
        ]
        best = max(len(s) for s in candidates)
        return tuple(s for s in candidates if len(s) == best)

    def derived_subgroup(self) -> frozenset[int]:
        comms = {
            self.mul[self.mul[self.inverse[a]][self.inverse[b]]][self.mul[a][b]]
            for a in range(self.order)
            for b in range(self.order)
        }
        return self.closure(comms)

    def generating_sequence(self) -> tuple[int, ...]:
        """A short generating sequence, found greedily by closure growth."""
        gens: list[int] = []
        covered = self.closure(gens)
        while len(covered) < self.order:
            best_gain, best = -1, None
            for g in range(self.order):
                if g in covered:
                    continue
                gain = len(self.closure([*gens, g]))
                if gain > best_gain:
                    best_gain, best = gain, g
            gens.append(best)
            covered = self.closure(gens)
        return tuple(gens)


def check_burnside_hall(group: FiniteGroup):
    """For a p-group of order p^n: h(h+1) >= 2n with p^h the largest order of
    a normal abelian subgroup. Returns (holds, h, n, witness subgroup)."""
    order = group.order
    primes = {q for q in range(2, order + 1) if order % q == 0 and _is_prime(q)}
    if len(primes) != 1:
        raise ValueError("not a p-group")
    p = primes.pop()
    n = 0
    m = order
    while m > 1:
        m //= p
        n += 1
    witness = group.maximal_normal_abelian_subgroups()[0]
    h = 0
    m = len(witness)
    while m > 1:
        m //= p
        h += 1
    return (h * (h + 1) >= 2 * n, h, n, witness)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- isomorphism testing ---------------------------------------------------------


def _fingerprint(g: FiniteGroup):
    orders = tuple(sorted(g.element_order(a) for a in range(g.order)))
    classes = tuple(sorted(len(c) for c in g.conjugacy_classes()))
    return (
        g.order,
        orders,
        len(g.center()),
        classes,
        g.is_abelian(),
        len(g.derived_subgroup()),
    )


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    """Exact isomorphism test: fingerprint pruning, then generator-image search."""
    if g.order != h.order:
        return False
    if _fingerprint(g) != _fingerprint(h):
        return False
    gens = g.generating_sequence()
    if not gens:
        return True  # both trivial
    # Express every element of g as a word in gens once, by BFS.
    expr: dict[int, tuple] = {g.identity: ()}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, gen in enumerate(gens):
                b = g.mul[a][gen]
                if b not in expr:
                    expr[b] = (*expr[a], gi)
                    nxt.append(b)
        frontier = nxt

    orders = [g.element_order(x) for x in gens]
    pools = [
        [y for y in range(h.order) if h.element_order(y) == o] for o in orders
    ]

    def image_of(word, images):
        x = h.identity
        for gi in word:
            x = h.mul[x][images[gi]]
        return x

    for images in product(*pools):
        mapped = {}
        ok = True
        for a, word in expr.items():
            mapped[a] = image_of(word, images)
        if len(set(mapped.values())) != g.order:
            continue
        for a in range(g.order):
            for b in range(g.order):
                if mapped[g.mul[a][b]] != h.mul[mapped[a]][mapped[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def contains_subgroup_isomorphic_to(g: FiniteGroup, h: FiniteGroup) -> bool:
    if g.order % h.order:
        return False
    for sub in g.subgroups_of_order(h.order):
        if are_isomorphic(subgroup_as_group(g, sub), h):
            return True
    return False


def subgroup_as_group(g: FiniteGroup, elements) -> FiniteGroup:
    """The subgroup on the given closed element set, as its own group."""
    elems = sorted(elements)
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[g.mul[a][b]] for b in elems] for a in elems]
    return FiniteGroup(table, name=f"subgroup of {g.name or 'group'}")


# -- catalog construction ----------------------------------------------------------


def _from_elements(elements, op, name, generator_elements):
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    gens = tuple(index[e] for e in generator_elements)
    return FiniteGroup(table, name=name, generators=gens)


def cyclic(n: int) -> FiniteGroup:
    return _from_elements(
        range(n), lambda a, b: (a + b) % n, f"C{n}", [1 % n]
    )


def product_cyclic(factors) -> FiniteGroup:
    factors = tuple(factors)
    elements = list(product(*(range(n) for n in factors)))
    def op(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, factors))
    gens = []
    for i, n in enumerate(factors):
        if n > 1:
            gens.append(tuple(1 if j == i else 0 for j in range(len(factors))))
    name = "x".join(f"C{n}" for n in factors)
    return _from_elements(elements, op, name, gens)


def dihedral(order: int) -> FiniteGroup:
    # D_{2n} of the stated ORDER (even, >= 4): rotation a, reflection b,
    # b a b = a^-1.
    if order % 2 or order < 4:
        raise ValueError("dihedral groups here have even order >= 4")
    n = order // 2
    elements = [(r, s) for s in (0, 1) for r in range(n)]
    def op(x, y):
        r1, s1 = x
        r2, s2 = y
        return ((r1 + (r2 if s1 == 0 else -r2)) % n, (s1 + s2) % 2)
    return _from_elements(elements, op, f"D{order}", [(1, 0), (0, 1)])


def binary_dihedral(order: int) -> FiniteGroup:
    # Dicyclic group of order 4n: a^{2n} = 1, b^2 = a^n, b a b^-1 = a^-1.
    if order % 4:
        raise ValueError("binary dihedral groups have order divisible by 4")
    n = order // 4
    two_n = 2 * n
    elements = [(i, j) for j in (0, 1) for i in range(two_n)]
    def op(x, y):
        i, j = x
        k, l = y
        if j == 0:
            return ((i + k) % two_n, l)
        # a^i b a^k b^l = a^{i-k} b^{1+l}, with b^2 = a^n.
        if l == 0:
            return ((i - k) % two_n, 1)
        return ((i - k + n) % two_n, 0)
    return _from_elements(elements, op, f"Q{order}", [(1, 0), (0, 1)])


def _perm_compose(p, q):
    # (p q)(x) = p(q(x))
    return tuple(p[q[i]] for i in range(len(p)))


def symmetric(n: int) -> FiniteGroup:
    if n > 4:
        raise ValueError("symmetric groups supported up to S4")
    from itertools import permutations

    elements = sorted(permutations(range(n)))
    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return _from_elements(elements, _perm_compose, f"S{n}", gens)


def alternating(n: int) -> FiniteGroup:
    if n > 4:
        raise ValueError("alternating groups supported up to A4")
    from itertools import permutations

    def sign(p):
        s = 1
        p = list(p)
        for i in range(len(p)):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                s = -s
        return s

    elements = sorted(p for p in permutations(range(n)) if sign(p) == 1)
    gens = []
    if n == 3:
        gens.append((1, 2, 0))
    if n == 4:
        gens.append((1, 2, 0, 3))  # 3-cycle
        gens.append((1, 0, 3, 2))  # double transposition
    if n <= 2:
        gens = [elements[0]]
    return _from_elements(elements, _perm_compose, f"A{n}", gens)


def heisenberg27() -> FiniteGroup:
    # The noncommutative group of order 27 in which every element has order 3.
    elements = list(product(range(3), repeat=3))
    def op(x, y):
        a, b, c = x
        d, e, f = y
        return ((a + d) % 3, (b + e) % 3, (c + f + a * e) % 3)
    return _from_elements(
        elements, op, "heisenberg27", [(1, 0, 0), (0, 1, 0)]
    )


def c3c3_semidirect_c2() -> FiniteGroup:
    # C3 + C3 extended by the inverting involution.
    elements = [((x, y), s) for s in (0, 1) for x in range(3) for y in range(3)]
    def op(p, q):
        (x, y), s = p
        (u, v), t = q
        if s:
            u, v = (-u) % 3, (-v) % 3
        return (((x + u) % 3, (y + v) % 3), (s + t) % 2)
    return _from_elements(
        elements, op, "C3xC3:C2", [((1, 0), 0), ((0, 1), 0), ((0, 0), 1)]
    )


def generalized_dihedral(factors) -> FiniteGroup:
    """The split extension of C_{n1} x ... x C_{nk} by the inverting involution.

    Elements are (vector, s) with s in {0, 1}; the involution conjugates every
    vector to its negative.  generalized_dihedral([n]) is plain dihedral of
    order 2n, and generalized_dihedral([3, 3]) matches c3c3_semidirect_c2.
    """
    factors = tuple(int(n) for n in factors)
    if not factors or any(n < 1 for n in factors):
        raise ValueError("factors must be positive integers")
    vectors = list(product(*(range(n) for n in factors)))
    elements = [(v, s) for s in (0, 1) for v in vectors]
    def op(p, q):
        v, s = p
        w, t = q
        if s:
            w = tuple(-x % n for x, n in zip(w, factors))
        return (tuple((x + y) % n for x, y, n in zip(v, w, factors)),
                (s + t) % 2)
    gens = [
        (tuple(1 if j == i else 0 for j in range(len(factors))), 0)
        for i, n in enumerate(factors)
        if n > 1
    ]
    gens.append((tuple(0 for _ in factors), 1))
    name = "x".join(f"C{n}" for n in factors) + ":C2"
    return _from_elements(elements, op, name, gens)


# The fifteen groups of order 24 with a cyclic 3-Sylow normalized layout:
# elements are (k, s) with k the C3 part written multiplicatively as c^k and
# s in the 2-Sylow S; the product twists by the action of S on c (columns
# "trivial"/"invert") or of c on S (case families I..V below).


def _c3_by_twosylow(two_sylow: FiniteGroup, inverts, name) -> FiniteGroup:
    # C3 normal, 2-Sylow acts: s^-1 c s = c^(-1 if inverts(s) else 1).
    elements = [(k, s) for k in range(3) for s in range(two_sylow.order)]
    def op(x, y):
        k, s = x
        l, t = y
        kk = (k + (-l if inverts(s) else l)) % 3
        return (kk, two_sylow.mul[s][t])
    gens = [(1, two_sylow.identity)] + [(0, g) for g in two_sylow.generators]
    return _from_elements(elements, op, name, gens)


def _twosylow_by_c3(two_sylow: FiniteGroup, act, name) -> FiniteGroup:
    # 2-Sylow normal, c acts: phi(s) = c^-1 s c must have order dividing 3.
    # Elements written c^k s; (c^k s)(c^l t) = c^{k+l} phi^l(s) t.
    def phi_pow(s, l):
        for _ in range(l % 3):
            s = act(s)
        return s
    elements = [(k, s) for k in range(3) for s in range(two_sylow.order)]
    def op(x, y):
        k, s = x
        l, t = y
        return ((k + l) % 3, two_sylow.mul[phi_pow(s, l)][t])
    gens = [(1, two_sylow.identity)] + [(0, g) for g in two_sylow.generators]
    return _from_elements(elements, op, name, gens)


def _c2c4() -> FiniteGroup:
    return product_cyclic([2, 4])


def _c2c2c2() -> FiniteGroup:
    return product_cyclic([2, 2, 2])


def _order24_catalog():
    catalog = {}
    catalog["I1"] = lambda: product_cyclic([3, 8])

    def i2():
        c8 = cyclic(8)
        return _c3_by_twosylow(c8, lambda s: s % 2 == 1, "I2")
    catalog["I2"] = i2

    catalog["II1"] = lambda: product_cyclic([3, 2, 4])

    def ii2():
        s = _c2c4()
        # generator orders here: index (x, y) with x in C2, y in C4;
        # only the order-4 generator inverts.
        elems = list(product(range(2), range(4)))
        return _c3_by_twosylow(s, lambda i: elems[i][1] % 2 == 1, "II2")
    catalog["II2"] = ii2

    def ii3():
        s = _c2c4()
        elems = list(product(range(2), range(4)))
        return _c3_by_twosylow(s, lambda i: elems[i][0] == 1, "II3")
    catalog["II3"] = ii3

    catalog["III1"] = lambda: product_cyclic([3, 2, 2, 2])

    def iii2():
        s = _c2c2c2()
        elems = list(product(range(2), repeat=3))
        index = {e: i for i, e in enumerate(elems)}
        # Order-3 automorphism of C2^3: fixes the first generator,
        # sends e2 -> e3 -> e2+e3 -> e2.
        def act(i):
            a1, a2, a3 = elems[i]
            return index[(a1, a3 % 2, (a2 + a3) % 2)]
        return _twosylow_by_c3(s, act, "III2")
    catalog["III2"] = iii2

    def iii3():
        s = _c2c2c2()
        elems = list(product(range(2), repeat=3))
        # Exactly one of the three commuting involutions inverts the C3.
        return _c3_by_twosylow(s, lambda i: elems[i][2] == 1, "III3")
    catalog["III3"] = iii3

    def iv1():
        q8 = binary_dihedral(8)
        elements = [(k, s) for k in range(3) for s in range(q8.order)]
        def op(x, y):
            return ((x[0] + y[0]) % 3, q8.mul[x[1]][y[1]])
        gens = [(1, q8.identity)] + [(0, g) for g in q8.generators]
        return _from_elements(elements, op, "IV1", gens)
    catalog["IV1"] = iv1

    def iv2():
        q8 = binary_dihedral(8)
        elems = [(i, j) for j in (0, 1) for i in range(4)]  # a^i b^j
        index = {e: i for i, e in enumerate(elems)}
        # Order-3 automorphism a -> b -> ab -> a, extended via s = a^i b^j.
        a, b = index[(1, 0)], index[(0, 1)]
        ab = q8.mul[a][b]
        def act(i):
            ii, j = elems[i]
            out = q8.identity
            for _ in range(ii % 4):
                out = q8.mul[out][b]
            if j:
                out = q8.mul[out][ab]
            return out
        return _twosylow_by_c3(q8, act, "IV2")
    catalog["IV2"] = iv2

    def iv3():
        q8 = binary_dihedral(8)
        elems = [(i, j) for j in (0, 1) for i in range(4)]
        return _c3_by_twosylow(q8, lambda i: elems[i][1] == 1, "IV3")
    catalog["IV3"] = iv3

    def v1():
        d8 = dihedral(8)
        elements = [(k, s) for k in range(3) for s in range(d8.order)]
        def op(x, y):
            return ((x[0] + y[0]) % 3, d8.mul[x[1]][y[1]])
        gens = [(1, d8.identity)] + [(0, g) for g in d8.generators]
        return _from_elements(elements, op, "V1", gens)
    catalog["V1"] = v1

    def v2():
        d8 = dihedral(8)
        elems = [(r, s) for s in (0, 1) for r in range(4)]
        return _c3_by_twosylow(d8, lambda i: elems[i][1] == 1, "V2")
    catalog["V2"] = v2

    def v3():
        d8 = dihedral(8)
        elems = [(r, s) for s in (0, 1) for r in range(4)]
        return _c3_by_twosylow(d8, lambda i: elems[i][0] % 2 == 1, "V3")
    catalog["V3"] = v3

    catalog["V4"] = lambda: symmetric(4)
    return catalog


ORDER24_LABELS = (
    "I1", "I2", "II1", "II2", "II3", "III1", "III2", "III3",
    "IV1", "IV2", "IV3", "V1", "V2", "V3", "V4",
)


def order24(label: str) -> FiniteGroup:
    catalog = _order24_catalog()
    if label not in catalog:
        raise ValueError(f"unknown order-24 case label {label!r}")
    g = catalog[label]()
    if g.order != 24:
        raise ArithmeticError(f"case {label} did not close to order 24")
    return g


def build_group(spec) -> FiniteGroup:
    """Build a catalog group from a spec mapping {family: ..., parameters}."""
    family = spec.get("family")
    if family == "cyclic":
        return cyclic(int(spec["n"]))
    if family == "product-cyclic":
        return product_cyclic([int(n) for n in spec["factors"]])
    if family == "dihedral":
        return dihedral(int(spec["order"]))
    if family == "binary-dihedral":
        return binary_dihedral(int(spec["order"]))
    if family == "symmetric":
        return symmetric(int(spec["n"]))
    if family == "alternating":
        return alternating(int(spec["n"]))
    if family == "heisenberg27":
        return heisenberg27()
    if family == "c3c3-semidirect-c2":
        return c3c3_semidirect_c2()
    if family == "generalized-dihedral":
        return generalized_dihedral([int(n) for n in spec["factors"]])
    if family == "order24":
        return order24(spec["case"])
    raise ValueError(f"unknown group family {family!r}")
