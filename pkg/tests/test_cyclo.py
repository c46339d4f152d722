"""Field arithmetic, conjugation, and exact linear algebra over Q(zeta_N)."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycert.cyclo import (
    ConductorError,
    CycMatrix,
    CycNum,
    cyc,
    eigenvalue_profile,
    has_eigenvalue_one,
    kernel_basis,
    root_of_unity,
    solve_exact,
    _min_poly_coeffs,
    phi,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 14, 21, 24, 84]


def small_cyc(conductor):
    """Strategy: a cyclotomic number with small rational coefficients."""
    coeff = st.fractions(
        min_value=-3, max_value=3, max_denominator=6
    )
    return st.lists(
        coeff, min_size=phi(conductor), max_size=phi(conductor)
    ).map(lambda cs: CycNum(conductor, cs))


# -- construction and basic identities ---------------------------------------


def test_known_rational_values():
    z3 = root_of_unity(3)
    assert z3 + z3 ** 2 == cyc(-1)
    z4 = root_of_unity(4)
    assert z4 * z4 == cyc(-1)
    assert root_of_unity(6, 3) == cyc(-1)
    assert root_of_unity(1, 0) == cyc(1)
    assert root_of_unity(2, 1) == cyc(-1)


def test_product_of_one_minus_seventh_roots():
    # Oracle: expanding the product over the nontrivial 7th roots gives 7.
    prod = cyc(1)
    for k in range(1, 7):
        prod = prod * (cyc(1) - root_of_unity(7, k))
    assert prod == cyc(7)


@pytest.mark.parametrize("n", [n for n in range(1, 85) if 84 % n == 0 or n <= 30])
def test_root_power_and_min_poly(n):
    z = root_of_unity(n)
    assert z ** n == cyc(1)
    coeffs = _min_poly_coeffs(n)
    acc = cyc(0)
    for i, c in enumerate(coeffs):
        acc = acc + cyc(c) * z ** i
    assert acc.is_zero()


def test_conductor_cap(monkeypatch):
    monkeypatch.setenv("CYCERT_MAX_CONDUCTOR", "10")
    with pytest.raises(ConductorError):
        root_of_unity(12)


def test_rational_round_trip():
    v = cyc(Fraction(3, 4), 12)
    assert v.is_rational()
    assert v.as_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        root_of_unity(3).as_fraction()


def test_division_errors():
    with pytest.raises(ZeroDivisionError):
        cyc(1) / cyc(0)


def test_unhashable_by_design():
    with pytest.raises(TypeError):
        hash(root_of_unity(3))


# -- field axioms and conjugation, property-based ----------------------------


@given(a=small_cyc(12), b=small_cyc(12), c=small_cyc(12))
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + b == b + a
    assert a * b == b * a


@given(a=small_cyc(7))
@settings(max_examples=40, deadline=None)
def test_multiplicative_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == cyc(1)


@given(a=small_cyc(12), b=small_cyc(12))
@settings(max_examples=60, deadline=None)
def test_conjugation_is_ring_automorphism(a, b):
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a


def test_conjugation_known_values():
    assert root_of_unity(4).conjugate() == -root_of_unity(4)
    assert cyc(-1).conjugate() == cyc(-1)
    assert root_of_unity(7, 2).conjugate() == root_of_unity(7, 5)


def test_mixed_conductor_promotion():
    assert root_of_unity(3) * root_of_unity(4) == root_of_unity(12, 7)
    assert root_of_unity(8, 4) == cyc(-1)
    assert root_of_unity(9, 3) == root_of_unity(3)


# -- matrices -----------------------------------------------------------------


def test_determinants_of_catalog_matrices():
    assert CycMatrix.diagonal([1, -1, -1]).det() == cyc(1)
    for n in (1, 2, 3, 5):
        assert CycMatrix.identity(n).det() == cyc(1)


def test_trace_of_rotation_image():
    z8 = root_of_unity(8)
    m = CycMatrix.diagonal([z8 ** 2, z8 ** -2])
    assert m.trace() == cyc(0)


@given(
    rows=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=10 ** 9),
)
@settings(max_examples=40, deadline=None)
def test_det_multiplicative(rows, seed):
    import random

    rng = random.Random(seed)
    def rand_matrix():
        return CycMatrix(
            rows, rows,
            [
                cyc(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
                * root_of_unity(6, rng.randint(0, 5))
                for _ in range(rows * rows)
            ],
        )

    a, b = rand_matrix(), rand_matrix()
    assert (a * b).det() == a.det() * b.det()


@pytest.mark.parametrize("n", [3, 4, 6, 7, 12])
def test_charpoly_of_companion_matrix(n):
    coeffs = _min_poly_coeffs(n)
    size = len(coeffs) - 1
    rows = [[0] * size for _ in range(size)]
    for i in range(1, size):
        rows[i][i - 1] = 1
    for i in range(size):
        rows[i][size - 1] = -coeffs[i]
    comp = CycMatrix.from_rows(rows)
    assert [c.as_fraction() for c in comp.charpoly()] == [
        Fraction(c) for c in coeffs
    ]


def test_eigenvalue_profiles():
    z4 = root_of_unity(4)
    prof = eigenvalue_profile(CycMatrix.diagonal([1, z4, z4 ** 3]), 4)
    assert prof == ((1, 0), (4, 1), (4, 3))
    swap_block = CycMatrix.from_rows([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert eigenvalue_profile(swap_block, 2) == ((1, 0), (2, 1), (2, 1))
    assert eigenvalue_profile(CycMatrix.identity(3), 1) == ((1, 0),) * 3


@given(seed=st.integers(min_value=0, max_value=10 ** 9))
@settings(max_examples=30, deadline=None)
def test_eigenvalue_profile_sums_to_size(seed):
    import random

    rng = random.Random(seed)
    exps = [rng.randint(0, 11) for _ in range(3)]
    m = CycMatrix.diagonal([root_of_unity(12, e) for e in exps])
    prof = eigenvalue_profile(m, 12)
    assert len(prof) == 3
    for (d, k) in prof:
        assert k == 0 or gcd(d, k) == 1


def test_eigenvalue_profile_rejects_wrong_order():
    m = CycMatrix.diagonal([2])
    with pytest.raises(ValueError):
        eigenvalue_profile(m, 4)


def test_has_eigenvalue_one():
    z3 = root_of_unity(3)
    assert not has_eigenvalue_one(CycMatrix.diagonal([z3, z3, z3]))
    assert has_eigenvalue_one(CycMatrix.identity(2))
    assert has_eigenvalue_one(CycMatrix.diagonal([z3, 1, z3 ** 2]))


def test_solve_and_kernel():
    a = CycMatrix.from_rows([[1, 2], [3, 4], [4, 6]])
    b = CycMatrix.from_rows([[1], [1], [2]])
    x = solve_exact(a, b)
    assert x is not None and a * x == b
    bad = CycMatrix.from_rows([[1], [1], [3]])
    assert solve_exact(a, bad) is None
    sing = CycMatrix.from_rows([[1, 1], [2, 2]])
    (vec,) = kernel_basis(sing)
    assert vec[0] + vec[1] == cyc(0)


def test_matrix_order():
    z6 = root_of_unity(6)
    assert CycMatrix.diagonal([z6, z6 ** 5]).multiplicative_order() == 6
    with pytest.raises(ValueError):
        CycMatrix.diagonal([2]).multiplicative_order(bound=5)
