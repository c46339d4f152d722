"""Search oracle for the order-27 triple-product preset.

The preset needs an action of the exponent-3 noncommutative group of
order 27 on a triple product of the hexagonal elliptic curve, with the
scalar zeta_3 automorphism as the center and every non-central element
acting freely.  On the plain product lattice no such action exists: the
cube relation of the coordinate 3-cycle forces the translation sum that
its freeness forbids (zeta_3 acts trivially on the relevant torsion).
The action lives on the index-3 sublattice of vectors whose coordinate
sum lies in (1 - zeta_3) * Z[zeta_3].

This script enumerates the 3^6 candidate translations for the 3-cycle
generator, with the diagonal generator's translation pinned to the
torsion point forced by the commutation relations, and reports every
candidate for which the full group closure verifies: order 27, exponent
3, noncommutative, faithful, free outside the center, and 27 fixed
points of the central generator falling into 3 orbits of size 9.

Run as a script to reproduce the frozen preset data:

    python3 tests/oracle_x32.py
"""

from fractions import Fraction
from itertools import product

import sympy

from cycert.groups import build_group, are_isomorphic
from cycert.torus import (
    AffineAut,
    ProductStructure,
    TorusModel,
    affine_closure,
    compose,
    enumerate_fixed_points,
    fixed_points,
    identity_aut,
)

I2 = ((1, 0), (0, 1))
Z2 = ((0, 0), (0, 0))
J3 = ((0, -1), (1, -1))  # multiplication by zeta_3 in basis (1, zeta_3)
J3SQ = ((-1, 1), (-1, 0))


def block_matrix(grid):
    rows = []
    for block_row in grid:
        for r in range(2):
            rows.append(tuple(v for block in block_row for v in block[r]))
    return tuple(rows)


G_REF = block_matrix([[J3, Z2, Z2], [Z2, J3, Z2], [Z2, Z2, J3]])
H_REF = block_matrix([[I2, Z2, Z2], [Z2, J3, Z2], [Z2, Z2, J3SQ]])
K_REF = block_matrix([[Z2, Z2, I2], [I2, Z2, Z2], [Z2, I2, Z2]])

# Sublattice basis over Z[zeta_3]: (1,-1,0), (0,1,-1), (1-zeta_3,0,0);
# real columns are each generator followed by zeta_3 times it.
SUBLATTICE_BASIS = (
    (1, 0, 0, 0, 1, 1),
    (0, 1, 0, 0, -1, 2),
    (-1, 0, 1, 0, 0, 0),
    (0, -1, 0, 1, 0, 0),
    (0, 0, -1, 0, 0, 0),
    (0, 0, 0, -1, 0, 0),
)

# The diagonal generator's translation in reference coordinates: the
# (1 - zeta_3)-torsion point (1 + 2 zeta_3)/3 repeated in all three
# factors, which is what commutation with the scalar action allows and
# freeness of the mixed diagonal elements requires.
H_TRANSLATION_REF = (
    Fraction(1, 3),
    Fraction(2, 3),
    Fraction(1, 3),
    Fraction(2, 3),
    Fraction(1, 3),
    Fraction(2, 3),
)


def sublattice_model():
    return TorusModel(
        ProductStructure(("zeta3", "zeta3", "zeta3")),
        basis=SUBLATTICE_BASIS,
        name="triple hexagonal, index-3 sublattice",
    )


def to_lattice_linear(model, reference_matrix):
    b = model._basis_sym
    m = b.inv() * sympy.Matrix([list(r) for r in reference_matrix]) * b
    rows = []
    for i in range(model.rank):
        row = []
        for j in range(model.rank):
            v = m[i, j]
            if not v.is_integer:
                raise ValueError("reference matrix does not preserve the sublattice")
            row.append(int(v))
        rows.append(tuple(row))
    return tuple(rows)


def to_lattice_point(model, reference_point):
    b_inv = model._basis_sym.inv()
    col = b_inv * sympy.Matrix([[sympy.Rational(v.numerator, v.denominator)]
                                for v in map(Fraction, reference_point)])
    return tuple(Fraction(int(col[i, 0].p), int(col[i, 0].q)) % 1
                 for i in range(model.rank))


def candidate_passes_quick_relations(g, h, k):
    """Cheap necessary conditions before paying for the full closure."""
    k2 = compose(k, k)
    if not compose(k2, k).is_identity():
        return False
    if compose(k, g) != compose(g, k):
        return False
    comm = compose(compose(k, h), compose(k.inverse(), h.inverse()))
    if comm != g and comm != compose(g, g):
        return False
    for elem in (k, compose(k, g), compose(k, compose(g, g))):
        if fixed_points(elem).kind != "empty":
            return False
    return True


def verify_full_action(model, g, h, k):
    """The complete certificate for one candidate; returns the spec or None."""
    spec = affine_closure(model, [g, h, k], name="order-27 closure")
    group = spec.group
    if group.order != 27:
        return None
    if group.is_abelian():
        return None
    if any(group.element_order(x) not in (1, 3) for x in range(group.order)):
        return None
    if not spec.is_faithful():
        return None
    if not are_isomorphic(group, build_group({"family": "heisenberg27"})):
        return None
    central = {identity_aut(model), g, compose(g, g)}
    for x in range(group.order):
        image = spec.image(x)
        fp = fixed_points(image)
        if image in central:
            if not image.is_identity() and (fp.kind != "isolated" or fp.count != 27):
                return None
        elif fp.kind != "empty":
            return None
    points = enumerate_fixed_points(g)
    if len(points) != 27:
        return None
    orbits = set()
    for pt in points:
        orbit = frozenset(spec.image(x).apply(pt) for x in range(group.order))
        orbits.add(orbit)
    sizes = sorted(len(o) for o in orbits)
    if sizes != [9, 9, 9]:
        return None
    return spec


def run_search(verbose=True):
    model = sublattice_model()
    g_lin = to_lattice_linear(model, G_REF)
    h_lin = to_lattice_linear(model, H_REF)
    k_lin = to_lattice_linear(model, K_REF)
    g = AffineAut(model, g_lin)
    h = AffineAut(model, h_lin, to_lattice_point(model, H_TRANSLATION_REF))
    thirds = (Fraction(0), Fraction(1, 3), Fraction(2, 3))
    survivors = []
    quick = 0
    for w in product(thirds, repeat=6):
        k = AffineAut(model, k_lin, w, check=False)
        if not candidate_passes_quick_relations(g, h, k):
            continue
        quick += 1
        if verify_full_action(model, g, h, k) is not None:
            survivors.append(w)
            if verbose:
                print("survivor:", tuple(str(v) for v in w))
    if verbose:
        print(f"{quick} candidates passed the quick relations")
        print(f"{len(survivors)} candidates passed the full certificate")
    return survivors


if __name__ == "__main__":
    found = run_search()
    if not found:
        raise SystemExit("no translation candidate produced a valid action")
    print("first survivor, lattice coordinates:",
          tuple(str(v) for v in found[0]))
