"""Complex tori as integer lattices with exact complex-structure presets.

A torus model fixes a reference lattice Z^(2d) together with one of two
symbolic complex structures:

* a product of elliptic curves, each factor tagged "zeta3", "zeta4", or any
  other label naming a curve with no extra endomorphisms (equal labels mean
  the same curve, so identity maps between those factors are allowed);
* a complex-multiplication lattice Z[zeta_N] with a chosen half of the
  eigenvalue exponents declared holomorphic.

Models derived from sub- or quotient constructions may carry no complex
structure; lattice-level operations still apply to them.

Automorphisms are affine: an integer matrix on lattice coordinates plus a
rational translation reduced mod 1. Everything is exact: fixed-point sets are
solved through Smith normal form, and holomorphic eigenvalues come out as
root-of-unity labels.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import sympy
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .cyclo import CycMatrix, CycNum, cyc, eigenvalue_profile, root_of_unity, solve_exact
from .groups import FiniteGroup

MAX_LINEAR_ORDER = 24
MAX_ENUMERATED_FIXED_POINTS = 10000


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"not an exact rational: {x!r}")


def _to_sym(v):
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    if isinstance(v, int):
        return sympy.Integer(v)
    if isinstance(v, sympy.Basic):
        return v
    raise TypeError(f"not an exact scalar: {v!r}")


def _sym_matrix(rows):
    return sympy.Matrix([[_to_sym(v) for v in row] for row in rows])


def _sym_column(values):
    return sympy.Matrix([[_to_sym(v)] for v in values])


def _frac_rows(m: sympy.Matrix):
    return tuple(
        tuple(_frac(m[i, j]) for j in range(m.cols)) for i in range(m.rows)
    )


def _int_rows(m: sympy.Matrix):
    rows = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            v = m[i, j]
            if not v.is_integer:
                raise ValueError("expected an integer matrix")
            row.append(int(v))
        rows.append(tuple(row))
    return tuple(rows)


# -- structures and models --------------------------------------------------------


class ProductStructure:
    """Product of elliptic curves, one tag per factor."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(str(t) for t in factors)
        if not factors:
            raise ValueError("need at least one factor")
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("ProductStructure is immutable")

    def __repr__(self):
        return f"ProductStructure({self.factors!r})"


class CMStructure:
    """Lattice Z[zeta_N]^copies with a declared holomorphic half."""

    __slots__ = ("conductor", "copies", "hol_type")

    def __init__(self, conductor: int, hol_type, copies: int = 1):
        from sympy import totient

        if conductor < 3:
            raise ValueError("complex multiplication needs conductor >= 3")
        if copies != 1:
            raise ValueError("only single-copy CM lattices are supported")
        phi = int(totient(conductor))
        hol_type = tuple(sorted(int(k) % conductor for k in hol_type))
        full = sorted(
            k for k in range(1, conductor) if sympy.gcd(k, conductor) == 1
        )
        if len(hol_type) != phi // 2:
            raise ValueError("holomorphic half has the wrong size")
        paired = sorted(list(hol_type) + [conductor - k for k in hol_type])
        if paired != full:
            raise ValueError(
                "holomorphic and conjugate exponents must partition the units"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "copies", copies)
        object.__setattr__(self, "hol_type", hol_type)

    def __setattr__(self, name, value):
        raise AttributeError("CMStructure is immutable")

    def __repr__(self):
        return f"CMStructure({self.conductor}, {self.hol_type!r})"


_CM_BLOCKS = {
    "zeta3": ((0, -1), (1, -1)),  # multiplication by zeta3 in basis (1, zeta3)
    "zeta4": ((0, -1), (1, 0)),  # multiplication by i in basis (1, i)
}


class TorusModel:
    """A torus: reference structure plus a rational change of lattice basis.

    The lattice is always Z^rank in its own coordinates; `basis` maps those
    coordinates to the reference coordinates of the structure (columns are the
    lattice basis vectors). Automorphism matrices act on lattice coordinates.
    """

    __slots__ = ("structure", "basis", "rank", "complex_dim", "name",
                 "_basis_sym", "_basis_inv")

    def __init__(self, structure, basis=None, name: str = ""):
        if isinstance(structure, ProductStructure):
            rank = 2 * len(structure.factors)
        elif isinstance(structure, CMStructure):
            from sympy import totient

            rank = structure.copies * int(totient(structure.conductor))
        elif structure is None:
            if basis is None:
                raise ValueError("structureless models need an explicit rank basis")
            rank = len(basis)
        else:
            raise TypeError("unknown structure")
        if rank % 2:
            raise ValueError("lattice rank must be even")
        if basis is None:
            basis = tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(rank))
                for i in range(rank)
            )
        else:
            basis = tuple(tuple(_frac(v) for v in row) for row in basis)
            if len(basis) != rank or any(len(r) != rank for r in basis):
                raise ValueError("basis must be square of the lattice rank")
        bsym = _sym_matrix(basis)
        if bsym.det() == 0:
            raise ValueError("basis is singular")
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "complex_dim", rank // 2)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_basis_sym", bsym)
        object.__setattr__(self, "_basis_inv", bsym.inv())

    def __setattr__(self, name, value):
        raise AttributeError("TorusModel is immutable")

    def __repr__(self):
        label = self.name or "torus"
        return f"<{label}: complex dim {self.complex_dim}>"

    def with_basis(self, basis, name: str = "") -> "TorusModel":
        return TorusModel(self.structure, basis=basis, name=name or self.name)

    def to_reference(self, linear) -> sympy.Matrix:
        """A lattice-coordinate matrix rewritten in reference coordinates."""
        return self._basis_sym * _sym_matrix(linear) * self._basis_inv

    def is_holomorphic_linear(self, linear) -> bool:
        if self.structure is None:
            raise ValueError("model carries no complex structure")
        try:
            self.holomorphic_matrix(linear)
        except ValueError:
            return False
        return True

    def holomorphic_matrix(self, linear) -> CycMatrix:
        """The complex-dim-sized exact matrix of the action on 1-forms' duals.

        Raises ValueError when the integer matrix is not complex-linear for
        the model's structure.
        """
        if self.structure is None:
            raise ValueError("model carries no complex structure")
        std = self.to_reference(linear)
        if isinstance(self.structure, ProductStructure):
            return self._product_hol(std)
        return self._cm_hol(std)

    def _product_hol(self, std: sympy.Matrix) -> CycMatrix:
        tags = self.structure.factors
        d = self.complex_dim
        entries = []
        for i in range(d):
            row = []
            for j in range(d):
                block = [[_frac(std[2 * i + a, 2 * j + b]) for b in range(2)]
                         for a in range(2)]
                row.append(_block_scalar(tags[i], tags[j], block))
            entries.append(row)
        return CycMatrix.from_rows(entries)

    def _cm_hol(self, std: sympy.Matrix) -> CycMatrix:
        n = self.structure.conductor
        rank = self.rank
        # Row functionals evaluating at zeta_n^k, one per holomorphic exponent.
        w_rows = [
            [root_of_unity(n, (k * i) % n) for i in range(rank)]
            for k in self.structure.hol_type
        ]
        w = CycMatrix.from_rows(w_rows)
        m_cyc = CycMatrix.from_rows(
            [[cyc(_frac(std[i, j])) for j in range(rank)] for i in range(rank)]
        )
        # W M = H W; transpose to solve with column unknowns.
        h_t = solve_exact(w.transpose(), (m_cyc.transpose()) * w.transpose())
        if h_t is None:
            raise ValueError("matrix does not respect the CM structure")
        return h_t.transpose()


def _block_scalar(tag_i: str, tag_j: str, block) -> CycNum:
    """The complex scalar a 2x2 rational block represents, or ValueError."""
    zero = all(block[a][b] == 0 for a in range(2) for b in range(2))
    if tag_i != tag_j:
        if not zero:
            raise ValueError("nonzero map between non-isogenous factors")
        return cyc(0)
    j_mat = _CM_BLOCKS.get(tag_i)
    if j_mat is None:
        # A curve without extra endomorphisms: only rational multiples of 1.
        if block[0][1] or block[1][0] or block[0][0] != block[1][1]:
            raise ValueError("map is not multiplication by a rational number")
        return cyc(block[0][0])
    a, b = block[0][0], block[1][0]
    for r in range(2):
        for c in range(2):
            want = a * (1 if r == c else 0) + b * j_mat[r][c]
            if block[r][c] != want:
                raise ValueError("map is not complex-linear for the CM tag")
    tau = root_of_unity(3 if tag_i == "zeta3" else 4)
    return cyc(a) + cyc(b) * tau


def product_model(factors, basis=None, name: str = "") -> TorusModel:
    return TorusModel(ProductStructure(factors), basis=basis, name=name)


def cm_model(conductor: int, hol_type, name: str = "") -> TorusModel:
    return TorusModel(CMStructure(conductor, hol_type), name=name)


# -- affine automorphisms ----------------------------------------------------------


class AffineAut:
    """x -> M x + t on lattice coordinates, t reduced mod 1."""

    __slots__ = ("model", "linear", "translation")

    def __init__(self, model: TorusModel, linear, translation=None, check=True):
        linear = tuple(tuple(int(v) for v in row) for row in linear)
        n = model.rank
        if len(linear) != n or any(len(r) != n for r in linear):
            raise ValueError("linear part must be rank x rank")
        if translation is None:
            translation = (Fraction(0),) * n
        translation = tuple(_frac(v) % 1 for v in translation)
        if len(translation) != n:
            raise ValueError("translation length must equal the rank")
        if check:
            det = _sym_matrix(linear).det()
            if det not in (1, -1):
                raise ValueError("linear part must be a lattice automorphism")
            if model.structure is not None and not model.is_holomorphic_linear(linear):
                raise ValueError("linear part is not holomorphic for the model")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", translation)

    def __setattr__(self, name, value):
        raise AttributeError("AffineAut is immutable")

    def __repr__(self):
        return f"<affine aut of rank {self.model.rank}>"

    def __eq__(self, other):
        if not isinstance(other, AffineAut):
            return NotImplemented
        return (self.model is other.model and self.linear == other.linear
                and self.translation == other.translation)

    def __hash__(self):
        return hash((id(self.model), self.linear, self.translation))

    def is_identity(self) -> bool:
        n = self.model.rank
        return (all(self.translation[i] == 0 for i in range(n))
                and all(self.linear[i][j] == (1 if i == j else 0)
                        for i in range(n) for j in range(n)))

    def apply(self, point) -> tuple:
        point = tuple(_frac(v) for v in point)
        n = self.model.rank
        return tuple(
            (sum(self.linear[i][j] * point[j] for j in range(n))
             + self.translation[i]) % 1
            for i in range(n)
        )

    def inverse(self) -> "AffineAut":
        minv = _int_rows(_sym_matrix(self.linear).inv())
        n = self.model.rank
        t = tuple(
            -sum(minv[i][j] * self.translation[j] for j in range(n))
            for i in range(n)
        )
        return AffineAut(self.model, minv, t, check=False)


def identity_aut(model: TorusModel) -> AffineAut:
    n = model.rank
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return AffineAut(model, eye, check=False)


def translation_aut(model: TorusModel, translation) -> AffineAut:
    n = model.rank
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return AffineAut(model, eye, translation, check=False)


def compose(f: AffineAut, g: AffineAut) -> AffineAut:
    """f after g: x -> f(g(x))."""
    if f.model is not g.model:
        raise ValueError("automorphisms live on different models")
    n = f.model.rank
    mf, mg = f.linear, g.linear
    linear = tuple(
        tuple(sum(mf[i][k] * mg[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    trans = tuple(
        (sum(mf[i][k] * g.translation[k] for k in range(n)) + f.translation[i]) % 1
        for i in range(n)
    )
    return AffineAut(f.model, linear, trans, check=False)


def affine_order(f: AffineAut) -> int:
    """Least n >= 1 with f^n = id; the linear order is capped at 24."""
    n = f.model.rank
    power = f.linear
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    linear_order = None
    for k in range(1, MAX_LINEAR_ORDER + 1):
        if power == eye:
            linear_order = k
            break
        power = tuple(
            tuple(sum(power[i][a] * f.linear[a][j] for a in range(n))
                  for j in range(n))
            for i in range(n)
        )
    if linear_order is None:
        raise ValueError(f"linear part order exceeds {MAX_LINEAR_ORDER}")
    acc = f
    for _ in range(linear_order - 1):
        acc = compose(acc, f)
    # acc = f^linear_order is a pure translation; its order is a denominator lcm.
    denom = 1
    for v in acc.translation:
        denom = lcm(denom, v.denominator)
    return linear_order * denom


class FixedPointSet:
    """Outcome of solving f(x) = x on the torus."""

    __slots__ = ("kind", "count", "witnesses")

    def __init__(self, kind: str, count=None, witnesses=()):
        if kind not in ("empty", "isolated", "positive-dimensional"):
            raise ValueError(f"unknown kind {kind!r}")
        if (kind == "isolated") != (count is not None):
            raise ValueError("count is set exactly for isolated sets")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "count", count)
        object.__setattr__(self, "witnesses", tuple(witnesses))

    def __setattr__(self, name, value):
        raise AttributeError("FixedPointSet is immutable")

    def __repr__(self):
        if self.kind == "isolated":
            return f"<fixed points: isolated, count {self.count}>"
        return f"<fixed points: {self.kind}>"


def _fixed_point_data(f: AffineAut):
    """Smith-form solution of (I - M) x = t + lattice, or None if empty."""
    n = f.model.rank
    a = [[(1 if i == j else 0) - f.linear[i][j] for j in range(n)] for i in range(n)]
    d, u, v = smith_normal_decomp(_sym_matrix(a), sympy.ZZ)
    t = _sym_column(f.translation)
    rhs = u * t
    diag = [int(d[i, i]) for i in range(n)]
    y = []
    for i in range(n):
        ui = _frac(rhs[i, 0])
        if diag[i] == 0:
            if ui.denominator != 1:
                return None
            y.append(Fraction(0))
        else:
            y.append(ui / diag[i])
    return diag, v, y


def fixed_points(f: AffineAut) -> FixedPointSet:
    data = _fixed_point_data(f)
    if data is None:
        return FixedPointSet("empty")
    diag, v, y = data
    n = f.model.rank
    base = _frac_rows(v * _sym_column(y))
    witness = tuple(base[i][0] % 1 for i in range(n))
    if f.apply(witness) != witness:
        raise ArithmeticError("fixed-point solver produced a non-fixed witness")
    if all(diag):
        count = 1
        for di in diag:
            count *= abs(di)
        return FixedPointSet("isolated", count=count, witnesses=(witness,))
    return FixedPointSet("positive-dimensional", witnesses=(witness,))


def enumerate_fixed_points(f: AffineAut):
    """All isolated fixed points of f, as exact torsion points."""
    data = _fixed_point_data(f)
    if data is None:
        return []
    diag, v, y = data
    if not all(diag):
        raise ValueError("fixed-point set is positive-dimensional")
    count = 1
    for di in diag:
        count *= abs(di)
    if count > MAX_ENUMERATED_FIXED_POINTS:
        raise ValueError(f"too many fixed points to enumerate ({count})")
    n = f.model.rank
    vf = _frac_rows(v)
    points = []
    offsets = [0] * n
    while True:
        yy = [y[i] + Fraction(offsets[i], diag[i]) for i in range(n)]
        pt = tuple(
            sum(vf[i][j] * yy[j] for j in range(n)) % 1 for i in range(n)
        )
        points.append(pt)
        for i in range(n):
            offsets[i] += 1
            if offsets[i] < abs(diag[i]):
                break
            offsets[i] = 0
        else:
            break
    unique = sorted(set(points))
    if len(unique) != count:
        raise ArithmeticError("fixed-point enumeration lost solutions")
    for pt in unique:
        if f.apply(pt) != pt:
            raise ArithmeticError("enumerated point is not fixed")
    return unique


def lefschetz_number(f: AffineAut) -> int:
    n = f.model.rank
    a = [[(1 if i == j else 0) - f.linear[i][j] for j in range(n)] for i in range(n)]
    return int(_sym_matrix(a).det())


def holomorphic_eigenvalues(f: AffineAut):
    """Eigenvalues of the holomorphic action, as (order, exponent) labels."""
    h = f.model.holomorphic_matrix(f.linear)
    n = f.model.rank
    power = f.linear
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    order = None
    for k in range(1, MAX_LINEAR_ORDER + 1):
        if power == eye:
            order = k
            break
        power = tuple(
            tuple(sum(power[i][a] * f.linear[a][j] for a in range(n))
                  for j in range(n))
            for i in range(n)
        )
    if order is None:
        raise ValueError("holomorphic eigenvalues need a finite-order map")
    return eigenvalue_profile(h, order)


def holomorphic_determinant(f: AffineAut) -> CycNum:
    return f.model.holomorphic_matrix(f.linear).det()


# -- group actions -----------------------------------------------------------------


class ActionSpec:
    """A finite group acting on a torus model by affine automorphisms.

    Built either from generator assignments (relations verified exhaustively)
    or by closing a set of automorphisms into a group.
    """

    __slots__ = ("model", "group", "images")

    def __init__(self, model: TorusModel, group: FiniteGroup, assignment):
        images: list = [None] * group.order
        images[group.identity] = identity_aut(model)
        gen_list = list(group.generators)
        auts = []
        for g in gen_list:
            aut = assignment[g]
            if aut.model is not model:
                raise ValueError("assigned automorphism lives on another model")
            auts.append(aut)
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, aut in zip(gen_list, auts):
                    y = group.mul[x][g]
                    prod = compose(images[x], aut)
                    if images[y] is None:
                        images[y] = prod
                        nxt.append(y)
                    elif images[y] != prod:
                        raise ValueError("assignment violates the group relations")
            frontier = nxt
        if any(m is None for m in images):
            raise ValueError("generators do not reach the whole group")
        for a in range(group.order):
            for b in range(group.order):
                if images[group.mul[a][b]] != compose(images[a], images[b]):
                    raise ValueError("assignment is not a homomorphism")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "images", tuple(images))

    def __setattr__(self, name, value):
        raise AttributeError("ActionSpec is immutable")

    def image(self, element: int) -> AffineAut:
        return self.images[element]

    def generator_images(self):
        return {g: self.images[g] for g in self.group.generators}

    def is_faithful(self) -> bool:
        return len(set(self.images)) == self.group.order

    def is_free(self) -> bool:
        return all(
            fixed_points(self.images[x]).kind == "empty"
            for x in range(self.group.order)
            if x != self.group.identity
        )


def affine_closure(model: TorusModel, generators, name: str = "") -> ActionSpec:
    """Close automorphisms under composition into a finite group action."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one automorphism")
    elements = [identity_aut(model)]
    index = {elements[0]: 0}
    frontier = [elements[0]]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = compose(f, g)
                if h not in index:
                    if len(elements) >= 48:
                        raise ValueError("closure exceeds the supported order")
                    index[h] = len(elements)
                    elements.append(h)
                    nxt.append(h)
        frontier = nxt
    # The set is closed under right multiplication by generators and contains
    # the identity, hence is a group; build its table.
    table = []
    for f in elements:
        row = []
        for g in elements:
            row.append(index[compose(f, g)])
        table.append(row)
    gen_indices = tuple(index[g] for g in gens)
    group = FiniteGroup(table, name=name or "affine closure",
                        generators=gen_indices)
    assignment = {index[g]: g for g in gens}
    return ActionSpec(model, group, assignment)


def quotient_by_translation_subgroup(spec: ActionSpec, translations) -> ActionSpec:
    """Quotient the torus by a finite translation group; push the action down.

    The new lattice is the old one enlarged by the translation lifts; its
    basis is recomputed by Hermite reduction. The acting group becomes the
    quotient, rebuilt by closing the pushed-forward generators.
    """
    model = spec.model
    n = model.rank
    ts = [tuple(_frac(v) % 1 for v in t) for t in translations]
    if not ts:
        raise ValueError("need at least one translation")
    if all(all(v == 0 for v in t) for t in ts):
        raise ValueError("translations are all trivial")
    q = 1
    for t in ts:
        for v in t:
            q = lcm(q, v.denominator)
    cols = []
    for i in range(n):
        cols.append([q if j == i else 0 for j in range(n)])
    for t in ts:
        cols.append([int(v * q) for v in t])
    gen_matrix = sympy.Matrix(cols).T
    h = hermite_normal_form(gen_matrix)
    c = h / sympy.Integer(q)  # columns: new lattice basis in old coordinates
    c_inv = c.inv()
    # Conjugation stability: every group element maps each translation back
    # into the enlarged lattice.
    for x in range(spec.group.order):
        m = spec.images[x].linear
        for t in ts:
            mt = [sum(m[i][j] * t[j] for j in range(n)) for i in range(n)]
            v = c_inv * _sym_column(mt)
            if any(not v[i, 0].is_integer for i in range(n)):
                raise ValueError("translation set is not normal under the action")
    new_basis = _frac_rows(model._basis_sym * c)
    new_model = TorusModel(model.structure, basis=new_basis,
                           name=(model.name + "/translations") if model.name else "")
    new_gens = []
    for g in spec.group.generators:
        aut = spec.images[g]
        m_new = _int_rows(c_inv * _sym_matrix(aut.linear) * c)
        t_new = _frac_rows(c_inv * _sym_column(aut.translation))
        new_gens.append(AffineAut(new_model, m_new,
                                  [t_new[i][0] for i in range(n)]))
    kept = [g for g in new_gens if not g.is_identity()]
    return affine_closure(new_model, kept or new_gens,
                          name=(spec.group.name + " quotient"))


def pushforward_translation(spec: ActionSpec, quotient_spec: ActionSpec, translation):
    """A translation of the original torus, expressed on the quotient model."""
    c = quotient_spec.model._basis_sym.inv() * spec.model._basis_sym
    t = c * _sym_column(translation)
    vals = [_frac(t[i, 0]) % 1 for i in range(spec.model.rank)]
    return translation_aut(quotient_spec.model, vals)


def connected_kernel_subtorus(spec: ActionSpec, endo):
    """Split off the connected kernel subtorus of an equivariant endomorphism.

    Returns (sub_model, quotient_spec) where the sublattice is the saturated
    kernel of the integer matrix and every group generator is pushed to the
    quotient. Raises if the kernel is trivial or everything, or if a generator
    does not preserve the sublattice.
    """
    model = spec.model
    n = model.rank
    endo = tuple(tuple(int(v) for v in row) for row in endo)
    if model.structure is not None and not model.is_holomorphic_linear(endo):
        raise ValueError("endomorphism does not respect the complex structure")
    d, u, v = smith_normal_decomp(_sym_matrix(endo), sympy.ZZ)
    kernel_pos = [i for i in range(n) if int(d[i, i]) == 0]
    r = len(kernel_pos)
    if r == 0:
        raise ValueError("kernel is trivial")
    if r == n:
        raise ValueError("kernel is everything")
    other_pos = [i for i in range(n) if int(d[i, i]) != 0]
    perm = kernel_pos + other_pos
    v_perm = v[:, perm]
    v_inv = v_perm.inv()
    sub_model = TorusModel(None,
                           basis=[[Fraction(1 if i == j else 0)
                                   for j in range(r)] for i in range(r)],
                           name=(model.name + " kernel") if model.name else "kernel")
    quot_model = TorusModel(None,
                            basis=[[Fraction(1 if i == j else 0)
                                    for j in range(n - r)] for i in range(n - r)],
                            name=(model.name + " quotient") if model.name else "quotient")
    descents = []
    for g in spec.group.generators:
        aut = spec.images[g]
        conj = v_inv * _sym_matrix(aut.linear) * v_perm
        for i in range(r, n):
            for j in range(r):
                if conj[i, j] != 0:
                    raise ValueError("a generator does not preserve the sublattice")
        block = _int_rows(conj[r:, r:])
        t_full = v_inv * _sym_column(aut.translation)
        t_quot = [_frac(t_full[i, 0]) % 1 for i in range(r, n)]
        descents.append(AffineAut(quot_model, block, t_quot, check=False))
    kept = [g for g in descents if not g.is_identity()]
    quotient_spec = affine_closure(quot_model, kept or descents,
                                   name=(spec.group.name + " on quotient"))
    return sub_model, quotient_spec
