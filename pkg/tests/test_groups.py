"""Tests for the finite group catalog and structure queries."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycert.groups import (
    ORDER24_LABELS,
    FiniteGroup,
    alternating,
    are_isomorphic,
    binary_dihedral,
    build_group,
    c3c3_semidirect_c2,
    check_burnside_hall,
    contains_subgroup_isomorphic_to,
    cyclic,
    dihedral,
    generalized_dihedral,
    heisenberg27,
    order24,
    product_cyclic,
    subgroup_as_group,
    symmetric,
)

SMALL_GROUPS = [
    cyclic(1), cyclic(2), cyclic(6), cyclic(12),
    product_cyclic([2, 2]), product_cyclic([2, 4]), product_cyclic([3, 3]),
    dihedral(6), dihedral(8), dihedral(12),
    binary_dihedral(8), binary_dihedral(12),
    symmetric(3), symmetric(4), alternating(4),
    heisenberg27(), c3c3_semidirect_c2(),
]


class TestConstruction:
    def test_identity_is_located(self):
        g = dihedral(8)
        e = g.identity
        assert all(g.mul[e][x] == x for x in range(g.order))

    def test_rejects_nonassociative_table(self):
        # A quasigroup table (subtraction mod 3) is not associative.
        table = [[(a - b) % 3 for b in range(3)] for a in range(3)]
        with pytest.raises(ValueError):
            FiniteGroup(table)

    def test_rejects_oversize(self):
        with pytest.raises(ValueError):
            cyclic(49)

    def test_dihedral_relations(self):
        g = dihedral(12)
        a, b = g.generators
        assert g.element_order(a) == 6
        assert g.element_order(b) == 2
        assert g.mul[g.mul[b][a]][b] == g.inverse[a]

    def test_binary_dihedral_relations(self):
        g = binary_dihedral(12)
        a, b = g.generators
        assert g.element_order(a) == 6
        assert g.mul[b][b] == g.power(a, 3)
        assert g.conjugate(b, a) == g.inverse[a]

    def test_quaternion_has_single_involution(self):
        g = binary_dihedral(8)
        assert sum(1 for x in range(8) if g.element_order(x) == 2) == 1

    def test_heisenberg27_exponent_three(self):
        g = heisenberg27()
        assert not g.is_abelian()
        assert all(g.element_order(x) in (1, 3) for x in range(27))

    def test_c3c3_semidirect_c2_shape(self):
        g = c3c3_semidirect_c2()
        assert g.order == 18
        assert not g.is_abelian()
        # Every element outside the index-2 subgroup is an involution.
        norm = g.closure([g.generators[0], g.generators[1]])
        assert all(
            g.element_order(x) == 2 for x in range(18) if x not in norm
        )

    def test_build_group_dispatch(self):
        assert build_group({"family": "cyclic", "n": 5}).order == 5
        assert build_group({"family": "product-cyclic", "factors": [2, 6]}).order == 12
        assert build_group({"family": "dihedral", "order": 10}).order == 10
        assert build_group({"family": "binary-dihedral", "order": 16}).order == 16
        assert build_group({"family": "symmetric", "n": 4}).order == 24
        assert build_group({"family": "alternating", "n": 4}).order == 12
        assert build_group({"family": "heisenberg27"}).order == 27
        assert build_group({"family": "order24", "case": "IV2"}).order == 24
        with pytest.raises(ValueError):
            build_group({"family": "sporadic"})


class TestStructureQueries:
    def test_center_of_d8(self):
        assert len(dihedral(8).center()) == 2

    def test_a4_class_sizes(self):
        sizes = sorted(len(c) for c in alternating(4).conjugacy_classes())
        assert sizes == [1, 3, 4, 4]

    def test_subgroup_counts(self):
        assert len(dihedral(8).subgroups()) == 10
        assert len(binary_dihedral(8).subgroups()) == 6
        assert len(symmetric(4).subgroups()) == 30

    def test_sylow(self):
        s4 = symmetric(4)
        syl2 = s4.sylow(2)
        assert len(syl2) == 8
        assert are_isomorphic(subgroup_as_group(s4, syl2), dihedral(8))
        assert len(s4.sylow(3)) == 3

    def test_maximal_normal_abelian_in_d8(self):
        best = dihedral(8).maximal_normal_abelian_subgroups()
        assert all(len(s) == 4 for s in best)
        assert len(best) == 3

    @given(st.sampled_from(SMALL_GROUPS), st.data())
    @settings(max_examples=60, deadline=None)
    def test_element_order_divides_group_order(self, g, data):
        x = data.draw(st.integers(0, g.order - 1))
        assert g.order % g.element_order(x) == 0

    @given(st.sampled_from(SMALL_GROUPS))
    @settings(max_examples=20, deadline=None)
    def test_class_sizes_partition_group(self, g):
        classes = g.conjugacy_classes()
        assert sum(len(c) for c in classes) == g.order
        assert all(g.order % len(c) == 0 for c in classes)

    @given(st.sampled_from(SMALL_GROUPS))
    @settings(max_examples=20, deadline=None)
    def test_center_is_normal_abelian(self, g):
        z = g.center()
        assert g.is_normal(z)
        assert g.is_subgroup_abelian(z)

    @given(st.sampled_from(SMALL_GROUPS), st.data())
    @settings(max_examples=60, deadline=None)
    def test_conjugation_preserves_order(self, g, data):
        x = data.draw(st.integers(0, g.order - 1))
        h = data.draw(st.integers(0, g.order - 1))
        assert g.element_order(g.conjugate(h, x)) == g.element_order(x)


class TestBurnsideHall:
    def test_d8(self):
        holds, h, n, witness = check_burnside_hall(dihedral(8))
        assert (holds, h, n) == (True, 2, 3)
        assert len(witness) == 4

    def test_heisenberg27_is_extremal(self):
        holds, h, n, witness = check_burnside_hall(heisenberg27())
        assert (holds, h, n) == (True, 2, 3)
        assert h * (h + 1) == 2 * n

    def test_rejects_mixed_order(self):
        with pytest.raises(ValueError):
            check_burnside_hall(symmetric(3))


class TestIsomorphism:
    def test_d8_not_q8(self):
        assert not are_isomorphic(dihedral(8), binary_dihedral(8))

    def test_c6_is_c2_times_c3(self):
        assert are_isomorphic(cyclic(6), product_cyclic([2, 3]))

    def test_twisted_product_differs_from_direct(self):
        assert not are_isomorphic(order24("I2"), order24("I1"))

    def test_self_isomorphism_with_permuted_table(self):
        g = symmetric(3)
        perm = [2, 0, 1, 5, 3, 4]
        inv = [perm.index(i) for i in range(6)]
        table = [
            [inv[g.mul[perm[a]][perm[b]]] for b in range(6)] for a in range(6)
        ]
        assert are_isomorphic(g, FiniteGroup(table))

    def test_contains_subgroup_examples(self):
        assert contains_subgroup_isomorphic_to(symmetric(4), alternating(4))
        assert contains_subgroup_isomorphic_to(dihedral(8), cyclic(4))
        assert not contains_subgroup_isomorphic_to(
            binary_dihedral(8), product_cyclic([2, 2])
        )


class TestOrder24Catalog:
    def test_all_close_to_order_24(self):
        for label in ORDER24_LABELS:
            assert order24(label).order == 24

    def test_pairwise_nonisomorphic(self):
        groups = [order24(label) for label in ORDER24_LABELS]
        for i, g in enumerate(groups):
            for h in groups[i + 1 :]:
                assert not are_isomorphic(g, h)

    def test_sylow_families(self):
        models = {
            "I": cyclic(8),
            "II": product_cyclic([2, 4]),
            "III": product_cyclic([2, 2, 2]),
            "IV": binary_dihedral(8),
            "V": dihedral(8),
        }
        for label in ORDER24_LABELS:
            g = order24(label)
            syl = subgroup_as_group(g, g.sylow(2))
            assert are_isomorphic(syl, models[label.rstrip("1234")])

    def test_known_identifications(self):
        assert are_isomorphic(order24("V4"), symmetric(4))
        assert contains_subgroup_isomorphic_to(order24("III2"), alternating(4))
        assert contains_subgroup_isomorphic_to(order24("IV2"), binary_dihedral(8))

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError):
            order24("VI1")


class TestGeneralizedDihedral:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_single_factor_is_dihedral(self, n):
        assert are_isomorphic(generalized_dihedral([n]), dihedral(2 * n))

    def test_three_three(self):
        assert are_isomorphic(
            generalized_dihedral([3, 3]), c3c3_semidirect_c2())

    def test_exponent_two_base_is_direct(self):
        # Inversion is trivial on C2 x C2, so the extension is a product.
        assert are_isomorphic(
            generalized_dihedral([2, 2]), product_cyclic([2, 2, 2]))

    def test_names(self):
        assert generalized_dihedral([4]).name == "C4:C2"
        assert generalized_dihedral([2, 4]).name == "C2xC4:C2"

    def test_last_generator_inverts(self):
        g = generalized_dihedral([5])
        r, s = g.generators
        assert g.element_order(s) == 2
        assert g.mul[g.mul[s][r]][s] == g.inverse[r]

    def test_bad_factors_rejected(self):
        with pytest.raises(ValueError):
            generalized_dihedral([])
        with pytest.raises(ValueError):
            generalized_dihedral([0, 3])

    def test_build_group_family(self):
        g = build_group({"family": "generalized-dihedral", "factors": [2, 6]})
        assert g.order == 24
        assert g.name == "C2xC6:C2"
