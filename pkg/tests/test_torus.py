"""Tests for torus models, affine automorphisms, and exact fixed points."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycert.cyclo import cyc, root_of_unity
from cycert.torus import (
    AffineAut,
    CMStructure,
    affine_closure,
    affine_order,
    cm_model,
    compose,
    connected_kernel_subtorus,
    enumerate_fixed_points,
    fixed_points,
    holomorphic_determinant,
    holomorphic_eigenvalues,
    identity_aut,
    lefschetz_number,
    product_model,
    pushforward_translation,
    quotient_by_translation_subgroup,
    translation_aut,
)

from oracle_torus import brute_force_fixed_count

I2 = ((1, 0), (0, 1))
NEG2 = ((-1, 0), (0, -1))
J3 = ((0, -1), (1, -1))  # multiplication by zeta3 in basis (1, zeta3)
J3SQ = ((-1, 1), (-1, 0))
J4 = ((0, -1), (1, 0))  # multiplication by i in basis (1, i)


def blockdiag(*blocks):
    n = 2 * len(blocks)
    rows = [[0] * n for _ in range(n)]
    for k, b in enumerate(blocks):
        for i in range(2):
            for j in range(2):
                rows[2 * k + i][2 * k + j] = b[i][j]
    return tuple(tuple(r) for r in rows)


def block_matrix(blocks):
    """Assemble a full matrix from a 2D grid of 2x2 blocks."""
    m = len(blocks)
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    for bi in range(m):
        for bj in range(m):
            b = blocks[bi][bj]
            for i in range(2):
                for j in range(2):
                    rows[2 * bi + i][2 * bj + j] = b[i][j]
    return tuple(tuple(r) for r in rows)


ZERO2 = ((0, 0), (0, 0))


@pytest.fixture(scope="module")
def triple_cm():
    return product_model(["zeta3"] * 3, name="triple CM curve")


@pytest.fixture(scope="module")
def triple_generic():
    return product_model(["e1", "e2", "e3"], name="three independent curves")


@pytest.fixture(scope="module")
def klein():
    return cm_model(7, [1, 2, 4], name="klein lattice")


def klein_generator(model):
    comp = [[0] * 6 for _ in range(6)]
    for i in range(5):
        comp[i + 1][i] = 1
    for i in range(6):
        comp[i][5] = -1
    return AffineAut(model, comp)


def igusa_generators(model):
    a = AffineAut(
        model,
        blockdiag(I2, NEG2, NEG2),
        [Fraction(1, 2), 0, 0, 0, 0, 0],
    )
    b = AffineAut(
        model,
        blockdiag(NEG2, I2, NEG2),
        [0, 0, Fraction(1, 2), 0, Fraction(1, 2), 0],
    )
    return a, b


class TestModelValidation:
    def test_cm_partition_invariant(self):
        with pytest.raises(ValueError):
            CMStructure(7, [1, 2, 6])  # 1 and 6 are conjugate exponents
        with pytest.raises(ValueError):
            CMStructure(7, [1, 2])  # wrong size
        CMStructure(7, [3, 5, 6])  # conjugate half is fine

    def test_basis_must_be_invertible(self, triple_cm):
        with pytest.raises(ValueError):
            triple_cm.with_basis([[0] * 6] * 6)

    def test_structureless_model_refuses_holomorphic_ops(self):
        from cycert.torus import TorusModel

        m = TorusModel(None, basis=[[Fraction(1 if i == j else 0)
                                     for j in range(4)] for i in range(4)])
        with pytest.raises(ValueError):
            m.holomorphic_matrix(blockdiag(I2, I2))


class TestAdmissibility:
    def test_cross_factor_map_needs_isogeny(self, triple_generic):
        swap = block_matrix([
            [ZERO2, I2, ZERO2],
            [I2, ZERO2, ZERO2],
            [ZERO2, ZERO2, I2],
        ])
        with pytest.raises(ValueError):
            AffineAut(triple_generic, swap)

    def test_swap_of_isomorphic_factors_is_allowed(self):
        model = product_model(["e1", "e2", "e2"])
        swap = block_matrix([
            [I2, ZERO2, ZERO2],
            [ZERO2, ZERO2, I2],
            [ZERO2, I2, ZERO2],
        ])
        AffineAut(model, swap)

    def test_cm_block_on_generic_factor_rejected(self, triple_generic):
        with pytest.raises(ValueError):
            AffineAut(triple_generic, blockdiag(J3, I2, I2))

    def test_cm_block_on_matching_factor_accepted(self, triple_cm):
        AffineAut(triple_cm, blockdiag(J3, J3SQ, I2))

    def test_determinant_guard(self, triple_cm):
        doubled = blockdiag(((2, 0), (0, 2)), I2, I2)
        with pytest.raises(ValueError):
            AffineAut(triple_cm, doubled)


class TestCompose:
    def test_two_torsion_translation_squares_to_identity(self, triple_cm):
        t = translation_aut(triple_cm, [Fraction(1, 2)] + [0] * 5)
        assert compose(t, t).is_identity()
        assert affine_order(t) == 2

    def test_product_action_generators_commute(self, triple_generic):
        a, b = igusa_generators(triple_generic)
        assert compose(a, b) == compose(b, a)
        assert affine_order(a) == 2 and affine_order(b) == 2

    @given(st.data())
    @settings(max_examples=30, deadline=None)
    def test_compose_associative(self, data):
        model = product_model(["zeta3"] * 2)
        pool = [I2, NEG2, J3, J3SQ]
        def draw_aut():
            blocks = [data.draw(st.sampled_from(pool)) for _ in range(2)]
            t = [Fraction(data.draw(st.integers(0, 5)), 6) for _ in range(4)]
            return AffineAut(model, blockdiag(*blocks), t)
        f, g, h = draw_aut(), draw_aut(), draw_aut()
        assert compose(compose(f, g), h) == compose(f, compose(g, h))

    def test_model_mismatch_rejected(self, triple_cm, triple_generic):
        with pytest.raises(ValueError):
            compose(identity_aut(triple_cm), identity_aut(triple_generic))


class TestFixedPoints:
    def test_free_translation(self, triple_cm):
        t = translation_aut(triple_cm, [Fraction(1, 3)] + [0] * 5)
        assert fixed_points(t).kind == "empty"

    def test_identity_is_positive_dimensional(self, triple_cm):
        assert fixed_points(identity_aut(triple_cm)).kind == "positive-dimensional"

    def test_product_generator_acts_freely(self, triple_generic):
        a, b = igusa_generators(triple_generic)
        ab = compose(a, b)
        for f in (a, b, ab):
            assert fixed_points(f).kind == "empty"

    def test_scalar_cube_root_has_27(self, triple_cm):
        g3 = AffineAut(triple_cm, blockdiag(J3, J3, J3))
        fp = fixed_points(g3)
        assert (fp.kind, fp.count) == ("isolated", 27)
        pts = enumerate_fixed_points(g3)
        assert len(pts) == 27
        assert all(g3.apply(p) == p for p in pts)

    def test_minus_one_has_64(self, triple_cm):
        neg = AffineAut(triple_cm, blockdiag(NEG2, NEG2, NEG2))
        assert fixed_points(neg).count == 64
        assert lefschetz_number(neg) == 64

    def test_klein_generator_has_7(self, klein):
        g7 = klein_generator(klein)
        assert lefschetz_number(g7) == 7
        assert fixed_points(g7).count == 7

    def test_witnesses_are_fixed(self, triple_cm):
        g3 = AffineAut(triple_cm, blockdiag(J3, J3, J3))
        fp = fixed_points(g3)
        assert fp.witnesses and all(g3.apply(w) == w for w in fp.witnesses)

    def test_lefschetz_is_signed(self, triple_cm):
        # A single zeta3 block keeps two factors pointwise fixed.
        partial = AffineAut(triple_cm, blockdiag(J3, I2, I2))
        assert lefschetz_number(partial) == 0
        assert fixed_points(partial).kind == "positive-dimensional"

    def test_hundred_randomized_against_oracle(self, triple_cm):
        rng = random.Random(20240817)
        units3 = [I2, NEG2, J3, J3SQ,
                  tuple(tuple(-v for v in row) for row in J3),
                  tuple(tuple(-v for v in row) for row in J3SQ)]
        units4 = [I2, NEG2, J4, tuple(tuple(-v for v in row) for row in J4)]
        model4 = product_model(["zeta4"] * 3)
        model_e = product_model(["e", "e", "e"])
        pools = [(triple_cm, units3), (model4, units4), (model_e, [I2, NEG2])]
        checked = 0
        while checked < 100:
            model, units = pools[rng.randrange(len(pools))]
            perm = list(range(3))
            rng.shuffle(perm)
            blocks = [[ZERO2] * 3 for _ in range(3)]
            for j in range(3):
                blocks[perm[j]][j] = units[rng.randrange(len(units))]
            linear = block_matrix(blocks)
            trans = [Fraction(rng.randrange(6), 6) for _ in range(6)]
            f = AffineAut(model, linear, trans)
            fp = fixed_points(f)
            if fp.kind == "positive-dimensional":
                continue
            try:
                expected = brute_force_fixed_count(f)
            except ValueError:
                continue  # oracle walk too large for this draw
            if fp.kind == "empty":
                # The oracle counts rational solutions of the lift; emptiness
                # happens only when the linear part is singular, which the
                # oracle refuses; nonsingular cases always have solutions.
                assert expected is None
                continue
            assert expected == fp.count
            checked += 1
        assert checked == 100


class TestHolomorphicData:
    def test_scalar_cube_root(self, triple_cm):
        g3 = AffineAut(triple_cm, blockdiag(J3, J3, J3))
        assert holomorphic_eigenvalues(g3) == ((3, 1), (3, 1), (3, 1))
        assert holomorphic_determinant(g3) == cyc(1)

    def test_klein_eigenvalues(self, klein):
        g7 = klein_generator(klein)
        assert holomorphic_eigenvalues(g7) == ((7, 1), (7, 2), (7, 4))
        assert holomorphic_determinant(g7) == cyc(1)

    def test_identity_eigenvalues(self, triple_cm):
        assert holomorphic_eigenvalues(identity_aut(triple_cm)) == (
            (1, 0), (1, 0), (1, 0)
        )

    def test_mixed_diagonal(self, triple_cm):
        h = AffineAut(triple_cm, blockdiag(I2, J3, J3SQ))
        assert holomorphic_eigenvalues(h) == ((1, 0), (3, 1), (3, 2))
        assert holomorphic_determinant(h) == cyc(1)

    def test_stable_under_lattice_basis_change(self, triple_cm):
        rng = random.Random(7)
        h_lin = blockdiag(J3, J3, I2)
        for _ in range(5):
            # Random unimodular change of lattice basis.
            u = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
            for _ in range(8):
                i, j = rng.randrange(6), rng.randrange(6)
                if i != j:
                    c = rng.choice([-1, 1])
                    for k in range(6):
                        u[i][k] += c * u[j][k]
            import sympy

            us = sympy.Matrix(u)
            model2 = triple_cm.with_basis(
                [[Fraction(int(us[i, j])) for j in range(6)] for i in range(6)]
            )
            conj = us.inv() * sympy.Matrix([list(r) for r in h_lin]) * us
            h2 = AffineAut(model2, [[int(conj[i, j]) for j in range(6)]
                                    for i in range(6)])
            assert holomorphic_eigenvalues(h2) == holomorphic_eigenvalues(
                AffineAut(triple_cm, h_lin)
            )


class TestActionSpec:
    def test_closure_of_product_action(self, triple_generic):
        a, b = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a, b], name="product square")
        assert spec.group.order == 4
        assert spec.group.is_abelian()
        assert spec.is_faithful()
        assert spec.is_free()

    def test_generator_orders_divide_group_order(self, triple_generic):
        a, b = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a, b])
        for g in spec.group.generators:
            assert spec.group.order % affine_order(spec.image(g)) == 0

    def test_inconsistent_assignment_rejected(self, triple_cm):
        from cycert.groups import cyclic
        from cycert.torus import ActionSpec

        c2 = cyclic(2)
        g3 = AffineAut(triple_cm, blockdiag(J3, J3, J3))
        with pytest.raises(ValueError):
            ActionSpec(triple_cm, c2, {c2.generators[0]: g3})


class TestQuotientConstructions:
    def test_translation_quotient_enlarges_lattice(self, triple_generic):
        a, _ = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a])
        quot = quotient_by_translation_subgroup(
            spec, [[Fraction(1, 2), 0, 0, 0, 0, 0]]
        )
        import sympy

        from cycert.torus import _sym_matrix

        index = 1 / abs(_sym_matrix(quot.model.basis).det())
        assert index == 2

    def test_pushforward_of_quotient_translation_is_identity(self, triple_generic):
        a, _ = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a])
        tau = [Fraction(1, 2), 0, 0, 0, 0, 0]
        quot = quotient_by_translation_subgroup(spec, [tau])
        assert pushforward_translation(spec, quot, tau).is_identity()

    def test_non_normal_translation_rejected(self):
        # At a zeta4 factor, rotation by i sends the 3-torsion point (1/3, 0)
        # to (0, 1/3), which is outside the enlarged lattice.
        model = product_model(["zeta4"])
        rot = AffineAut(model, J4)
        spec = affine_closure(model, [rot])
        with pytest.raises(ValueError):
            quotient_by_translation_subgroup(spec, [[Fraction(1, 3), 0]])

    def test_kernel_split_of_product_action(self, triple_generic):
        a, _ = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a])
        endo = blockdiag(ZERO2, ((-2, 0), (0, -2)), ((-2, 0), (0, -2)))
        sub, quot = connected_kernel_subtorus(spec, endo)
        assert sub.rank == 2
        assert quot.model.rank == 4
        assert quot.group.order == 2
        nontrivial = [x for x in range(quot.group.order)
                      if x != quot.group.identity][0]
        assert lefschetz_number(quot.image(nontrivial)) == 16

    def test_zero_endomorphism_rejected(self, triple_generic):
        a, _ = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a])
        with pytest.raises(ValueError):
            connected_kernel_subtorus(spec, [[0] * 6] * 6)

    def test_invertible_endomorphism_rejected(self, triple_generic):
        a, _ = igusa_generators(triple_generic)
        spec = affine_closure(triple_generic, [a])
        with pytest.raises(ValueError):
            connected_kernel_subtorus(spec, blockdiag(NEG2, NEG2, NEG2))
