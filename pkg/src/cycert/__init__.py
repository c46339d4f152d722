"""Exact certification of quotient constructions of Calabi-Yau threefolds.

The package derives the finite groups behind free torus quotients and
(K3 x elliptic curve) quotients, certifies fixed-point counts and Picard
numbers of the associated crepant resolutions, and handles the nodal-chamber
arithmetic on quadratic lattices. All arithmetic is exact.
"""

from cycert.cyclo import (
    CycMatrix,
    CycNum,
    cyc,
    eigenvalue_profile,
    has_eigenvalue_one,
    root_of_unity,
)

__all__ = [
    "CycMatrix",
    "CycNum",
    "cyc",
    "eigenvalue_profile",
    "has_eigenvalue_one",
    "root_of_unity",
]
