"""Picard numbers of threefold torus quotients and their crepant resolutions.

The quotient-level count is the dimension of the invariant part of the
second cohomology of the torus, computed twice (character average and an
explicit averaging projector on wedge monomials) with agreement required.
The resolution-level count adds one exceptional divisor per junior element
of each isolated cyclic stabilizer.  A companion solver recovers invariant
dimensions of finite group actions on the second cohomology of a K3
surface from fixed-point counts alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cyclo import (
    CycMatrix,
    block_diag,
    cyc,
    kernel_basis,
    wedge_square_matrix,
)
from .groups import FiniteGroup
from .reps import (
    CharacterVector,
    character,
    inner_product,
    invariant_dimension,
    irrep_catalog,
    wedge_square_character,
)
from .torus import (
    ActionSpec,
    enumerate_fixed_points,
    fixed_points,
    holomorphic_eigenvalues,
)

K3_SECOND_BETTI = 22

# Fixed-point counts of symplectic K3 automorphisms by order, after Nikulin.
_K3_SYMPLECTIC_FIXED = {2: 8, 3: 6, 4: 4, 5: 4, 6: 2, 7: 3, 8: 2}

_FORM_NAMES = ("dz1", "dz2", "dz3", "dz̄1", "dz̄2", "dz̄3")
_WEDGE = "∧"

# Pairs (i, j), i < j, in the order wedge_square_matrix uses; indices 0..2
# are holomorphic differentials, 3..5 their conjugates.
_PAIRS = tuple((i, j) for i in range(6) for j in range(i + 1, 6))


def _hodge_type(pair) -> int:
    """0, 1, 2 for a (2,0), (1,1), (0,2) monomial respectively."""
    i, j = pair
    return (0 if i < 3 else 1) + (0 if j < 3 else 1)


@dataclass(frozen=True)
class FixedOrbitRecord:
    """One group orbit of isolated fixed points.

    holomorphic_weights are the tangent eigenvalue exponents of a generator
    of the (cyclic) stabilizer, as residues mod stabilizer_order.
    """

    orbit_size: int
    stabilizer_order: int
    holomorphic_weights: tuple[int, int, int]


@dataclass(frozen=True)
class InvariantSquares:
    """Invariant part of the second cohomology of the torus.

    dimension counts all invariant wedge monomial combinations; hodge
    splits it by type (2,0), (1,1), (0,2); basis lists the combinations
    with primitive integer coefficients where possible.
    """

    dimension: int
    hodge: tuple[int, int, int]
    basis: tuple[str, ...]


@dataclass(frozen=True)
class PicardReport:
    quotient_rho: int
    exceptional_contribution: int
    total_rho: int
    orbit_census: tuple[FixedOrbitRecord, ...]
    invariant_basis: tuple[str, ...]

    def __post_init__(self):
        if self.total_rho != self.quotient_rho + self.exceptional_contribution:
            raise ValueError("total_rho must be the sum of the two parts")


def _render_combination(vec) -> str:
    """Human-readable form of one invariant vector over the 15 monomials."""
    entries = list(vec)
    if all(v.is_rational() for v in entries):
        fracs = [v.as_fraction() for v in entries]
        denom = 1
        for f in fracs:
            denom = lcm(denom, f.denominator)
        ints = [int(f * denom) for f in fracs]
        content = gcd(*ints)
        if content > 1:
            ints = [value // content for value in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-value for value in ints]
        parts = []
        for idx, value in enumerate(ints):
            if not value:
                continue
            i, j = _PAIRS[idx]
            label = f"{_FORM_NAMES[i]}{_WEDGE}{_FORM_NAMES[j]}"
            if value == 1:
                term = label
            elif value == -1:
                term = f"-{label}"
            else:
                term = f"{value}*{label}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out
    parts = []
    for idx, value in enumerate(entries):
        if not value:
            continue
        i, j = _PAIRS[idx]
        parts.append(f"({value!r})*{_FORM_NAMES[i]}{_WEDGE}{_FORM_NAMES[j]}")
    return " + ".join(parts)


def picard_quotient_torus(spec: ActionSpec) -> InvariantSquares:
    """Invariant second cohomology of the torus under the group action.

    Computed two independent ways: averaging the character of the wedge
    square of H^1, and ranking the explicit averaging projector on the 15
    wedge monomials.  Any disagreement is a build bug and raises.
    """
    if spec.model.rank != 6:
        raise ValueError("invariant-square analysis needs a threefold torus")
    group = spec.group
    hol = [
        spec.model.holomorphic_matrix(spec.image(x).linear)
        for x in range(group.order)
    ]
    chi = CharacterVector(group, [m.trace() for m in hol])
    chi_bar = chi.conjugate()
    mixed = CharacterVector(
        group, [a * b for a, b in zip(chi.values, chi_bar.values)]
    )
    by_character = (
        invariant_dimension(wedge_square_character(chi)),
        invariant_dimension(mixed),
        invariant_dimension(wedge_square_character(chi_bar)),
    )

    accum = CycMatrix.zeros(15, 15)
    for m in hol:
        accum = accum + wedge_square_matrix(block_diag(m, m.conjugate()))
    projector = accum.scaled(Fraction(1, group.order))
    kernel = kernel_basis(CycMatrix.identity(15) - projector)

    by_projector = [0, 0, 0]
    typed = []
    for vec in kernel:
        types = {_hodge_type(_PAIRS[idx]) for idx, v in enumerate(vec) if v}
        if len(types) != 1:
            raise ArithmeticError("projector kernel vector mixes types")
        t = types.pop()
        by_projector[t] += 1
        typed.append((t, vec))
    if tuple(by_projector) != by_character:
        raise ArithmeticError(
            "invariant dimension routes disagree: "
            f"character {by_character}, projector {tuple(by_projector)}"
        )
    typed.sort(key=lambda pair: pair[0])
    basis = tuple(_render_combination(vec) for _, vec in typed)
    return InvariantSquares(len(kernel), by_character, basis)


def junior_count(stabilizer_order: int, weights) -> int:
    """Crepant exceptional divisors over one isolated cyclic quotient point.

    Counts exponents k in 1..r-1 whose weighted residues sum to exactly r
    (age one).  Weights must be nonzero mod r and sum to 0 mod r.
    """
    r = stabilizer_order
    if r < 1:
        raise ValueError("stabilizer order must be positive")
    weights = tuple(weights)
    if len(weights) != 3:
        raise ValueError("need exactly three weights")
    w = tuple(int(x) % r for x in weights)
    if any(x == 0 for x in w):
        raise ValueError("zero weight: the fixed locus is not isolated")
    if sum(w) % r:
        raise ValueError("weights do not sum to 0 mod the order")
    return sum(
        1
        for k in range(1, r)
        if (k * w[0]) % r + (k * w[1]) % r + (k * w[2]) % r == r
    )


def _stabilizer_weights(spec: ActionSpec, element: int, order: int):
    profile = holomorphic_eigenvalues(spec.image(element))
    if lcm(*(d for d, _ in profile)) != order:
        raise ValueError("stabilizer acts with kernel on the tangent space")
    weights = []
    for d, k in profile:
        if order % d:
            raise ArithmeticError("eigenvalue order does not divide the stabilizer order")
        weights.append((k * (order // d)) % order)
    if any(w == 0 for w in weights):
        raise ArithmeticError("isolated fixed point with a unit tangent eigenvalue")
    return tuple(weights)


def fixed_orbit_census(spec: ActionSpec) -> tuple[FixedOrbitRecord, ...]:
    """Group the isolated fixed points of all elements into group orbits.

    Counts from the lattice solver must match the explicit enumeration
    element by element, and every stabilizer must be cyclic with a
    tangent-faithful generator.
    """
    group = spec.group
    images = {x: spec.image(x) for x in range(group.order)}
    fixed_sets: dict[int, frozenset] = {}
    for x in range(group.order):
        if x == group.identity:
            continue
        fp = fixed_points(images[x])
        if fp.kind == "positive-dimensional":
            raise ValueError(
                f"element {x} has a positive-dimensional fixed locus"
            )
        if fp.kind == "empty":
            fixed_sets[x] = frozenset()
            continue
        points = frozenset(enumerate_fixed_points(images[x]))
        if len(points) != fp.count:
            raise ArithmeticError("fixed-point count and enumeration disagree")
        fixed_sets[x] = points

    all_points = set().union(*fixed_sets.values()) if fixed_sets else set()
    remaining = set(all_points)
    records = []
    while remaining:
        seed = min(remaining)
        orbit = {images[x].apply(seed) for x in range(group.order)}
        if not orbit <= all_points:
            raise ArithmeticError("orbit left the enumerated fixed locus")
        remaining -= orbit
        stabilizer = [group.identity] + [
            x for x in fixed_sets if seed in fixed_sets[x]
        ]
        order = len(stabilizer)
        if len(orbit) * order != group.order:
            raise ArithmeticError("orbit-stabilizer accounting failed")
        generator = min(
            (x for x in stabilizer if group.element_order(x) == order),
            default=None,
        )
        if generator is None:
            raise ValueError("non-cyclic stabilizer is out of scope")
        weights = _stabilizer_weights(spec, generator, order)
        records.append(FixedOrbitRecord(len(orbit), order, weights))
    records.sort(
        key=lambda r: (r.orbit_size, r.stabilizer_order, r.holomorphic_weights)
    )
    return tuple(records)


def picard_crepant(spec: ActionSpec) -> PicardReport:
    """Picard number of a crepant resolution of the quotient threefold."""
    invariants = picard_quotient_torus(spec)
    if invariants.hodge[0] or invariants.hodge[2]:
        raise ValueError(
            "invariant forms of pure holomorphic type survive; the Picard "
            "accounting here needs none"
        )
    census = fixed_orbit_census(spec)
    exceptional = sum(
        junior_count(record.stabilizer_order, record.holomorphic_weights)
        for record in census
    )
    return PicardReport(
        quotient_rho=invariants.dimension,
        exceptional_contribution=exceptional,
        total_rho=invariants.dimension + exceptional,
        orbit_census=census,
        invariant_basis=invariants.basis,
    )


def nikulin_fixed_count(order: int) -> int:
    """Fixed-point count of a symplectic K3 automorphism of the given order."""
    if order not in _K3_SYMPLECTIC_FIXED:
        raise ValueError(
            f"symplectic K3 automorphisms have order 2 through 8, got {order}"
        )
    return _K3_SYMPLECTIC_FIXED[order]


def solve_k3_invariants(group: FiniteGroup, fixed_counts) -> dict[str, int]:
    """Irrep multiplicities on K3 second cohomology from fixed-point counts.

    fixed_counts maps element indices to fixed-point counts; each
    non-identity conjugacy class needs at least one entry, and entries
    within a class must agree.  The trace of an element is its count minus
    two, the identity contributes dimension 22, and the resulting class
    function must resolve into nonnegative integer multiplicities.
    """
    counts = {int(x): int(c) for x, c in dict(fixed_counts).items()}
    for x in counts:
        if not 0 <= x < group.order:
            raise ValueError(f"element index {x} out of range")
        if counts[x] < 0:
            raise ValueError("fixed counts are nonnegative")
    if group.identity in counts:
        raise ValueError("the identity fixes the whole surface, not a finite set")
    traces = [0] * group.order
    traces[group.identity] = K3_SECOND_BETTI
    for cls in group.conjugacy_classes():
        if group.identity in cls:
            continue
        given = {counts[x] for x in cls if x in counts}
        if not given:
            raise ValueError(
                f"no fixed count given for the class of element {min(cls)}"
            )
        if len(given) > 1:
            raise ValueError("fixed counts differ within a conjugacy class")
        value = given.pop()
        for x in cls:
            traces[x] = value - 2
    trace_vector = CharacterVector(group, traces)

    result: dict[str, int] = {}
    total_dim = 0
    for rep in irrep_catalog(group):
        chi = character(rep)
        try:
            raw = inner_product(trace_vector, chi)
        except ArithmeticError as exc:
            raise ArithmeticError(
                "no nonnegative integer solution: " + str(exc)
            ) from exc
        if raw.denominator != 1 or raw < 0:
            raise ArithmeticError(
                f"no nonnegative integer solution: multiplicity of "
                f"{rep.name} came out {raw}"
            )
        result[rep.name] = int(raw)
        total_dim += int(raw) * int(chi.values[group.identity].as_fraction())
    if total_dim != K3_SECOND_BETTI:
        raise ArithmeticError(
            f"multiplicities account for dimension {total_dim}, not 22"
        )
    return result


def type_k_picard(group: FiniteGroup, fixed_counts) -> int:
    """Picard number of the quotient: invariant dimension plus one."""
    multiplicities = solve_k3_invariants(group, fixed_counts)
    one = cyc(1)
    for rep in irrep_catalog(group):
        chi = character(rep)
        if all(v == one for v in chi.values):
            return multiplicities[rep.name] + 1
    raise ArithmeticError("irrep catalog lacks the trivial character")
