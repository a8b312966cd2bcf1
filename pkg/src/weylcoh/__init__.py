"""Equivariant cohomology of moduli spaces of marked del Pezzo surfaces.

Point counts of ordered point configurations in the plane give the
cohomology as symmetric group representations; complements of toric and
hyperplane arrangements attached to root systems give Weyl group
representations on related spaces.
"""

from .moduli import ALL_IDS, CohomologyTable, build_recipe, compute_cohomology
from .pointcount import CountPolynomial, TwistedCountTask, count_fixed, counts_to_cohomology, interpolate

__all__ = [
    "ALL_IDS",
    "CohomologyTable",
    "CountPolynomial",
    "TwistedCountTask",
    "build_recipe",
    "compute_cohomology",
    "count_fixed",
    "counts_to_cohomology",
    "interpolate",
]

__version__ = "0.1.0"
