"""Preset catalog checks: group shapes, freeness, fixed counts, holomorphic data."""

from fractions import Fraction
from itertools import product as iter_product

import pytest

from cycert.cyclo import CycMatrix, cyc, root_of_unity
from cycert.groups import are_isomorphic, build_group
from cycert.presets import (
    ACTION_PRESETS,
    X32_BASIS,
    action_preset,
    action_preset_names,
    calabi_action,
    igusa_action,
    klein_action,
    refined_igusa_action,
    refined_igusa_cover,
    x31_action,
    x32_action,
    _block_diag,
    _block_matrix,
    I2,
    J3,
    J3SQ,
    NEG2,
    Z2,
)
from cycert.torus import (
    AffineAut,
    affine_closure,
    compose,
    enumerate_fixed_points,
    fixed_points,
    holomorphic_determinant,
    holomorphic_eigenvalues,
    identity_aut,
    product_model,
    pushforward_translation,
    translation_aut,
)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)

ZETA3 = root_of_unity(3)
ONE = cyc(1)


@pytest.fixture(scope="module")
def igusa():
    return igusa_action()


@pytest.fixture(scope="module")
def refined():
    return refined_igusa_action()


@pytest.fixture(scope="module")
def calabi():
    return calabi_action()


@pytest.fixture(scope="module")
def klein():
    return klein_action()


@pytest.fixture(scope="module")
def x31():
    return x31_action()


@pytest.fixture(scope="module")
def x32():
    return x32_action()


def scalar_subgroup_elements(spec, generator_index):
    """Indices of the powers of one group element."""
    group = spec.group
    powers = {group.identity}
    current = generator_index
    while current not in powers:
        powers.add(current)
        current = group.mul[current][generator_index]
    return powers


class TestCatalog:
    def test_names(self):
        assert action_preset_names() == (
            "calabi",
            "igusa",
            "klein",
            "refined-igusa",
            "x31",
            "x32",
        )

    def test_unknown_name(self):
        with pytest.raises(KeyError, match="unknown action preset"):
            action_preset("banana")

    @pytest.mark.parametrize("name", sorted(ACTION_PRESETS))
    def test_every_preset_is_faithful(self, name):
        spec = action_preset(name)
        assert spec.is_faithful()


class TestIgusa:
    def test_group_shape(self, igusa):
        klein_four = build_group({"family": "product-cyclic", "factors": [2, 2]})
        assert igusa.group.order == 4
        assert are_isomorphic(igusa.group, klein_four)

    def test_action_is_free(self, igusa):
        assert igusa.is_free()

    def test_holomorphic_determinants_are_one(self, igusa):
        for x in range(igusa.group.order):
            assert holomorphic_determinant(igusa.image(x)) == ONE

    def test_every_nonidentity_element_negates_two_factors(self, igusa):
        for x in range(igusa.group.order):
            image = igusa.image(x)
            if image.is_identity():
                continue
            profile = holomorphic_eigenvalues(image)
            assert profile == ((1, 0), (2, 1), (2, 1))

    def test_zero_translation_generator_acquires_fixed_locus(self):
        model = product_model(("e1", "e2", "e3"))
        degenerate = AffineAut(model, _block_diag(I2, NEG2, NEG2))
        assert fixed_points(degenerate).kind == "positive-dimensional"


class TestRefinedIgusa:
    def test_cover_order_sixteen(self):
        cover, _ = refined_igusa_cover()
        assert cover.group.order == 16

    def test_square_of_product_is_the_central_translation(self):
        cover, translation = refined_igusa_cover()
        images = cover.generator_images()
        a, b = (images[g] for g in cover.group.generators)
        ab = compose(a, b)
        assert compose(ab, ab) == translation_aut(cover.model, translation)

    def test_translation_is_central_in_the_cover(self):
        cover, translation = refined_igusa_cover()
        t = translation_aut(cover.model, translation)
        for x in range(cover.group.order):
            image = cover.image(x)
            assert compose(image, t) == compose(t, image)

    def test_quotient_is_free_dihedral_of_order_8(self, refined):
        assert refined.group.order == 8
        assert are_isomorphic(refined.group, build_group({"family": "dihedral", "order": 8}))
        assert refined.is_free()

    def test_quotient_lattice_has_index_two(self, refined):
        import sympy

        det = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator)
                             for v in row] for row in refined.model.basis]).det()
        assert abs(det) == sympy.Rational(1, 2)

    def test_central_translation_dies_downstairs(self, refined):
        cover, translation = refined_igusa_cover()
        pushed = pushforward_translation(cover, refined, translation)
        assert pushed.is_identity()

    def test_zero_second_torsion_breaks_freeness(self):
        # The two 2-torsion points in the repeated factor must be distinct
        # AND both nonzero: with t3 = 0 the element a^2 b fixes points.
        model = product_model(("e1", "e2", "e2"))
        a_linear = _block_matrix([[I2, Z2, Z2], [Z2, Z2, NEG2], [Z2, I2, Z2]])
        a = AffineAut(model, a_linear, (Fraction(1, 4), 0, 0, 0, 0, 0))
        b = AffineAut(model, _block_diag(NEG2, I2, NEG2), (0, 0, HALF, 0, 0, 0))
        cover = affine_closure(model, [a, b])
        downstairs = None
        from cycert.torus import quotient_by_translation_subgroup

        downstairs = quotient_by_translation_subgroup(
            cover, [(0, 0, HALF, 0, HALF, 0)]
        )
        assert downstairs.group.order == 8
        assert not downstairs.is_free()


class TestCalabi:
    def test_group_order(self, calabi):
        assert calabi.group.order == 3

    def test_generator_data(self, calabi):
        g = calabi.image(calabi.group.generators[0])
        assert holomorphic_eigenvalues(g) == ((3, 1), (3, 1), (3, 1))
        assert holomorphic_determinant(g) == ONE
        assert fixed_points(g).count == 27

    def test_both_nonidentity_elements_fix_27(self, calabi):
        for x in range(1, 3):
            assert fixed_points(calabi.image(x)).count == 27


class TestKlein:
    def test_group_order(self, klein):
        assert klein.group.order == 7

    def test_generator_data(self, klein):
        g = klein.image(klein.group.generators[0])
        assert holomorphic_eigenvalues(g) == ((7, 1), (7, 2), (7, 4))
        assert holomorphic_determinant(g) == ONE
        assert fixed_points(g).count == 7

    def test_power_eigenvalues_follow_the_exponents(self, klein):
        g = klein.image(klein.group.generators[0])
        square = compose(g, g)
        assert holomorphic_eigenvalues(square) == ((7, 1), (7, 2), (7, 4))


class TestX31:
    def test_group_shape(self, x31):
        nine = build_group({"family": "product-cyclic", "factors": [3, 3]})
        assert x31.group.order == 9
        assert are_isomorphic(x31.group, nine)

    def test_holomorphic_matrices(self, x31):
        images = x31.generator_images()
        g, h = (images[i] for i in x31.group.generators)
        hol_g = x31.model.holomorphic_matrix(g.linear)
        hol_h = x31.model.holomorphic_matrix(h.linear)
        assert hol_g == CycMatrix.diagonal([ZETA3, ZETA3, ZETA3])
        assert hol_h == CycMatrix.diagonal([ONE, ZETA3, ZETA3 * ZETA3])

    def test_elements_outside_scalar_subgroup_are_free(self, x31):
        g_index = x31.group.generators[0]
        scalars = scalar_subgroup_elements(x31, g_index)
        assert len(scalars) == 3
        for x in range(x31.group.order):
            kind = fixed_points(x31.image(x)).kind
            if x == x31.group.identity:
                assert kind == "positive-dimensional"
            elif x in scalars:
                assert fixed_points(x31.image(x)).count == 27
            else:
                assert kind == "empty"

    def test_census_nine_orbits_of_three(self, x31):
        g_index = x31.group.generators[0]
        points = enumerate_fixed_points(x31.image(g_index))
        assert len(points) == 27
        orbits = {
            frozenset(x31.image(x).apply(pt) for x in range(x31.group.order))
            for pt in points
        }
        assert sorted(len(o) for o in orbits) == [3] * 9


class TestX32:
    def test_group_shape(self, x32):
        assert x32.group.order == 27
        assert are_isomorphic(x32.group, build_group({"family": "heisenberg27"}))
        assert all(
            x32.group.element_order(x) in (1, 3) for x in range(27)
        )

    def test_sublattice_has_index_three(self, x32):
        import sympy

        det = sympy.Matrix([list(r) for r in X32_BASIS]).det()
        assert abs(det) == 3
        model_det = sympy.Matrix(
            [[sympy.Rational(v.numerator, v.denominator) for v in row]
             for row in x32.model.basis]
        ).det()
        assert abs(model_det) == 3

    def test_holomorphic_matrices(self, x32):
        images = x32.generator_images()
        g, h, k = (images[i] for i in x32.group.generators)
        assert x32.model.holomorphic_matrix(g.linear) == CycMatrix.diagonal(
            [ZETA3, ZETA3, ZETA3]
        )
        assert x32.model.holomorphic_matrix(h.linear) == CycMatrix.diagonal(
            [ONE, ZETA3, ZETA3 * ZETA3]
        )
        assert x32.model.holomorphic_matrix(k.linear) == CycMatrix.from_rows(
            [
                [cyc(0), cyc(0), cyc(1)],
                [cyc(1), cyc(0), cyc(0)],
                [cyc(0), cyc(1), cyc(0)],
            ]
        )

    def test_center_fixes_27_everything_else_is_free(self, x32):
        group = x32.group
        central = group.center()
        assert len(central) == 3
        for x in range(group.order):
            fp = fixed_points(x32.image(x))
            if x == group.identity:
                continue
            if x in central:
                assert fp.count == 27
            else:
                assert fp.kind == "empty"

    def test_census_three_orbits_of_nine(self, x32):
        group = x32.group
        central = sorted(group.center() - {group.identity})
        points = enumerate_fixed_points(x32.image(central[0]))
        assert len(points) == 27
        orbits = {
            frozenset(x32.image(x).apply(pt) for x in range(group.order))
            for pt in points
        }
        assert sorted(len(o) for o in orbits) == [9, 9, 9]

    def test_no_free_action_exists_on_the_plain_product_lattice(self):
        # The cube of the 3-cycle generator is the translation by the
        # coordinate sum, so closing the relations forces exactly the
        # torsion that freeness of the 3-cycle coset forbids; the scalar
        # acts trivially on that torsion, so no translation choice works.
        model = product_model(("zeta3", "zeta3", "zeta3"))
        g = AffineAut(model, _block_diag(J3, J3, J3))
        h = AffineAut(
            model,
            _block_diag(I2, J3, J3SQ),
            (THIRD, 2 * THIRD, THIRD, 2 * THIRD, THIRD, 2 * THIRD),
        )
        k_linear = _block_matrix([[Z2, Z2, I2], [I2, Z2, Z2], [Z2, I2, Z2]])
        thirds = (Fraction(0), THIRD, 2 * THIRD)
        for w in iter_product(thirds, repeat=6):
            k = AffineAut(model, k_linear, w, check=False)
            k3 = compose(k, compose(k, k))
            if not k3.is_identity():
                continue
            if compose(k, g) != compose(g, k):
                continue
            comm = compose(compose(k, h), compose(k.inverse(), h.inverse()))
            if comm != g and comm != compose(g, g):
                continue
            # Relations hold; freeness of the 3-cycle coset must now fail.
            assert any(
                fixed_points(elem).kind != "empty"
                for elem in (k, compose(k, g), compose(k, compose(g, g)))
            )
