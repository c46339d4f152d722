"""Catalogued torus actions: the classical free quotients and the crepant-resolution pairs.

Every preset returns a fully verified :class:`~cycert.torus.ActionSpec`.
Linear parts are written down in reference coordinates (2x2 blocks per
elliptic-curve factor) and conjugated into lattice coordinates where the
model uses a proper sublattice.  All translation data is exact.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from cycert.classify import TypeKSpec
from cycert.groups import c3c3_semidirect_c2, cyclic, dihedral, product_cyclic
from cycert.picard import nikulin_fixed_count
from cycert.torus import (
    ActionSpec,
    AffineAut,
    ProductStructure,
    TorusModel,
    affine_closure,
    cm_model,
    product_model,
    quotient_by_translation_subgroup,
    translation_aut,
)

__all__ = [
    "ACTION_PRESETS",
    "TYPE_K_PRESETS",
    "action_preset",
    "action_preset_names",
    "igusa_action",
    "refined_igusa_action",
    "refined_igusa_cover",
    "calabi_action",
    "klein_action",
    "x31_action",
    "x32_action",
    "type_k_preset",
    "type_k_preset_names",
]

I2 = ((1, 0), (0, 1))
NEG2 = ((-1, 0), (0, -1))
Z2 = ((0, 0), (0, 0))
J3 = ((0, -1), (1, -1))  # multiplication by zeta_3 in basis (1, zeta_3)
J3SQ = ((-1, 1), (-1, 0))

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def _block_matrix(grid):
    rows = []
    for block_row in grid:
        for r in range(2):
            rows.append(tuple(v for block in block_row for v in block[r]))
    return tuple(rows)


def _block_diag(*blocks):
    n = len(blocks)
    return _block_matrix(
        [[blocks[i] if i == j else Z2 for j in range(n)] for i in range(n)]
    )


def igusa_action() -> ActionSpec:
    """Free (Z/2)^2 on a product of three elliptic curves.

    Each generator negates two of the factors and translates by a nonzero
    2-torsion point in a negated-free coordinate, so every non-identity
    element keeps a translation component along its fixed direction.
    """
    model = product_model(("e1", "e2", "e3"), name="triple product")
    a = AffineAut(model, _block_diag(I2, NEG2, NEG2), (HALF, 0, 0, 0, 0, 0))
    b = AffineAut(model, _block_diag(NEG2, I2, NEG2), (0, 0, HALF, 0, HALF, 0))
    return affine_closure(model, [a, b], name="igusa")


def refined_igusa_cover():
    """The order-16 cover of the dihedral example, plus the central translation.

    Returns (spec, translation) where the spec closes the two affine maps

        a: (z1, z2, z3) -> (z1 + t1, -z3, z2)      t1 of exact order 4,
        b: (z1, z2, z3) -> (-z1, z2 + t2, -z3 + t3)

    on E1 x E2 x E2, and the translation is by (0, t2 + t3, t2 + t3), the
    value of (ab)^2.  Dividing by that central translation leaves a free
    dihedral action of order 8 downstairs.
    """
    model = product_model(("e1", "e2", "e2"), name="order-4 cover")
    a_linear = _block_matrix([[I2, Z2, Z2], [Z2, Z2, NEG2], [Z2, I2, Z2]])
    a = AffineAut(model, a_linear, (Fraction(1, 4), 0, 0, 0, 0, 0))
    b = AffineAut(model, _block_diag(NEG2, I2, NEG2), (0, 0, HALF, 0, 0, HALF))
    spec = affine_closure(model, [a, b], name="cover")
    translation = (0, 0, HALF, HALF, HALF, HALF)
    return spec, translation


def refined_igusa_action() -> ActionSpec:
    """Free dihedral action of order 8 on an abelian threefold.

    Obtained from the order-16 cover by dividing out the central 2-torsion
    translation that the square of the product of the generators produces.
    """
    cover, translation = refined_igusa_cover()
    return quotient_by_translation_subgroup(cover, [translation])


def calabi_action() -> ActionSpec:
    """The scalar zeta_3 automorphism on the triple hexagonal product."""
    model = product_model(("zeta3", "zeta3", "zeta3"), name="triple hexagonal")
    g = AffineAut(model, _block_diag(J3, J3, J3))
    return affine_closure(model, [g], name="calabi")


def klein_action() -> ActionSpec:
    """Multiplication by zeta_7 on the degree-6 cyclotomic lattice."""
    model = cm_model(7, (1, 2, 4), name="seventh cyclotomic")
    n = model.rank
    companion = tuple(
        tuple(
            -1 if j == n - 1 else (1 if i == j + 1 else 0)
            for j in range(n)
        )
        for i in range(n)
    )
    g = AffineAut(model, companion)
    return affine_closure(model, [g], name="klein")


def x31_action() -> ActionSpec:
    """Commuting order-9 extension of the scalar zeta_3 action.

    The second generator acts as diag(1, zeta_3, zeta_3^2) with the same
    (1 - zeta_3)-torsion translation in every factor; the translations keep
    all six elements outside the scalar subgroup fixed-point free.
    """
    model = product_model(("zeta3", "zeta3", "zeta3"), name="triple hexagonal")
    g = AffineAut(model, _block_diag(J3, J3, J3))
    h = AffineAut(
        model,
        _block_diag(I2, J3, J3SQ),
        (THIRD, 2 * THIRD, THIRD, 2 * THIRD, THIRD, 2 * THIRD),
    )
    return affine_closure(model, [g, h], name="x31")


# Sublattice of the triple hexagonal product: coordinate sums in
# (1 - zeta_3) Z[zeta_3].  Z[zeta_3]-basis (1,-1,0), (0,1,-1),
# (1-zeta_3,0,0); real columns are each generator followed by zeta_3
# times it.  The exponent-3 group of order 27 cannot act freely outside
# its center on the plain product lattice (the cube relation of the
# 3-cycle forces the translation sum that freeness forbids), so the
# preset lives here; the sublattice is abstractly the same threefold.
X32_BASIS = (
    (1, 0, 0, 0, 1, 1),
    (0, 1, 0, 0, -1, 2),
    (-1, 0, 1, 0, 0, 0),
    (0, -1, 0, 1, 0, 0),
    (0, 0, -1, 0, 0, 0),
    (0, 0, 0, -1, 0, 0),
)

# Lattice-coordinate translation for the 3-cycle generator, frozen from
# the exhaustive search in tests/oracle_x32.py (3 of 729 candidates
# verify; they differ by composing with the central scalar).
X32_CYCLE_TRANSLATION = (0, 0, 0, 0, THIRD, 2 * THIRD)


def _to_lattice_linear(model: TorusModel, reference_matrix):
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


def _to_lattice_point(model: TorusModel, reference_point):
    b_inv = model._basis_sym.inv()
    col = b_inv * sympy.Matrix(
        [[sympy.Rational(v.numerator, v.denominator)]
         for v in map(Fraction, reference_point)]
    )
    return tuple(
        Fraction(int(col[i, 0].p), int(col[i, 0].q)) % 1 for i in range(model.rank)
    )


def x32_action() -> ActionSpec:
    """The exponent-3 noncommutative group of order 27 on the sublattice model.

    The center acts as the scalar zeta_3; the diagonal generator acts as
    diag(1, zeta_3, zeta_3^2) and the third generator cyclically permutes
    the factors.  Every element outside the center is fixed-point free.
    """
    model = TorusModel(
        ProductStructure(("zeta3", "zeta3", "zeta3")),
        basis=X32_BASIS,
        name="triple hexagonal, index-3 sublattice",
    )
    g = AffineAut(model, _to_lattice_linear(model, _block_diag(J3, J3, J3)))
    h = AffineAut(
        model,
        _to_lattice_linear(model, _block_diag(I2, J3, J3SQ)),
        _to_lattice_point(
            model, (THIRD, 2 * THIRD, THIRD, 2 * THIRD, THIRD, 2 * THIRD)
        ),
    )
    k_linear = _to_lattice_linear(
        model, _block_matrix([[Z2, Z2, I2], [I2, Z2, Z2], [Z2, I2, Z2]])
    )
    k = AffineAut(model, k_linear, X32_CYCLE_TRANSLATION)
    return affine_closure(model, [g, h, k], name="x32")


ACTION_PRESETS = {
    "igusa": igusa_action,
    "refined-igusa": refined_igusa_action,
    "calabi": calabi_action,
    "klein": klein_action,
    "x31": x31_action,
    "x32": x32_action,
}


def action_preset_names():
    return tuple(sorted(ACTION_PRESETS))


def action_preset(name: str) -> ActionSpec:
    try:
        builder = ACTION_PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown action preset {name!r}; choose from {action_preset_names()}"
        ) from None
    return builder()


# -- surface-times-curve data presets ------------------------------------------------
#
# Each preset packages one surviving candidate of the product pipeline: the
# abstract group, its index-two translation part, an exact elliptic-curve
# action (translation-part elements shift, everything else negates), and the
# declared surface fixed-point counts.  The surface action itself is never
# constructed; `realized` records whether a classical construction is known.


def _product_type_data(preset_name, group, shifts, realized) -> TypeKSpec:
    *h_gens, iota = group.generators
    model = product_model(("e1",), name="curve factor")
    assignment = {
        g: translation_aut(model, shift) for g, shift in zip(h_gens, shifts)
    }
    assignment[iota] = AffineAut(model, NEG2)
    elliptic = ActionSpec(model, group, assignment)
    h_elements = group.closure(h_gens)
    counts = {
        x: (nikulin_fixed_count(group.element_order(x))
            if x in h_elements else 0)
        for x in range(group.order)
        if x != group.identity
    }
    return TypeKSpec(
        name=preset_name,
        group=group,
        translation_part=h_elements,
        involution=iota,
        elliptic=elliptic,
        fixed_counts=counts,
        realized=realized,
    )


def typek_c2_data():
    """Trivial translation part; the involution alone (the classical free
    anti-symplectic pairing, realized)."""
    return _product_type_data("typek-c2", cyclic(2), [], realized=True)


def typek_c2x2_data():
    """Translation part C2 shifting by a half period (realized)."""
    return _product_type_data(
        "typek-c2x2", product_cyclic([2, 2]), [(HALF, 0)], realized=True
    )


def typek_c2x3_data():
    """Translation part C2 x C2 shifting by the two half periods (realized)."""
    return _product_type_data(
        "typek-c2x3",
        product_cyclic([2, 2, 2]),
        [(HALF, 0), (0, HALF)],
        realized=True,
    )


def typek_d6_data():
    """Translation part C3; candidate data only, existence open."""
    return _product_type_data(
        "typek-d6", dihedral(6), [(THIRD, 0)], realized=False
    )


def typek_d8_data():
    """Translation part C4 shifting by a quarter period (realized)."""
    return _product_type_data(
        "typek-d8", dihedral(8), [(Fraction(1, 4), 0)], realized=True
    )


def typek_d10_data():
    """Translation part C5; candidate data only, existence open."""
    return _product_type_data(
        "typek-d10", dihedral(10), [(Fraction(1, 5), 0)], realized=False
    )


def typek_d12_data():
    """Translation part C6; candidate data only, existence open."""
    return _product_type_data(
        "typek-d12", dihedral(12), [(Fraction(1, 6), 0)], realized=False
    )


def typek_c3c3c2_data():
    """Translation part C3 x C3; candidate data only, existence open."""
    return _product_type_data(
        "typek-c3c3c2",
        c3c3_semidirect_c2(),
        [(THIRD, 0), (0, THIRD)],
        realized=False,
    )


TYPE_K_PRESETS = {
    "typek-c2": typek_c2_data,
    "typek-c2x2": typek_c2x2_data,
    "typek-c2x3": typek_c2x3_data,
    "typek-d6": typek_d6_data,
    "typek-d8": typek_d8_data,
    "typek-d10": typek_d10_data,
    "typek-d12": typek_d12_data,
    "typek-c3c3c2": typek_c3c3c2_data,
}


def type_k_preset_names():
    return tuple(sorted(TYPE_K_PRESETS))


def type_k_preset(name: str):
    try:
        builder = TYPE_K_PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown data preset {name!r}; choose from {type_k_preset_names()}"
        ) from None
    return builder()
