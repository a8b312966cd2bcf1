"""Moduli spaces of marked cubic and quartic del Pezzo surfaces with
singular anticanonical curves, assembled from arrangement complements.

Every space is described by a ``Recipe``: a root system inside a
sublattice of the Picard lattice, the arrangement kind, an optional
``-id`` twist (quotient by inversion on the torus), an optional induction
from the stabiliser of the extra classes, and for degree 4 the quotient by
the normal subgroup ``(Z/2)^4`` of ``W(D5)``.  Unions are obtained from a
toric and a projective space with ``blowup_combine``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import intlinalg as il
from . import reference as ref
from .arrangements import (ArrangementError, ArrangementPoset, ordinary_from_compact,
                           projectivize, quotient_average)
from .cache import Cache, content_key, poset_from_text, poset_to_text
from .chartab import ClassFunction, induce, symmetric_table, weyl_character_table
from .weyl import WeylGroup, build_root_system, del_pezzo_lattice, symmetric_group_embedding


class ModuliError(RuntimeError):
    pass


@dataclass(frozen=True)
class Recipe:
    identifier: str
    degree: int  # 3 or 4
    root_type: str = ""
    orthogonal_to: tuple[str, ...] = ()
    kind: str = "toric"  # toric | projective
    twist: bool = False  # average over {id, -id}
    stabilizer: str | None = None  # None | pointwise | setwise
    include_long: bool = False
    union: tuple[str, str] | None = None  # (toric id, projective id)
    description: str = ""

    @property
    def is_union(self) -> bool:
        return self.union is not None


_TRIO = ("E1", "L-E1-E2", "2L-E1-E3-E4-E5-E6")

RECIPES = {r.identifier: r for r in [
    Recipe("D3n", 3, "E6", (), "toric", True,
           description="inversion quotient of the E6 toric complement"),
    Recipe("D3c", 3, "E6", (), "projective",
           description="projectivised E6 hyperplane complement"),
    Recipe("D3_2n_hat", 3, "D5", ("E6",), "toric", True, "pointwise",
           description="inversion quotient of the D5 toric complement, over the 27 lines"),
    Recipe("D3_tn", 3, "D5", ("E6",), "projective", False, "pointwise",
           description="projectivised D5 hyperplane complement, over the 27 lines"),
    Recipe("D3_3n_hat", 3, "F4", _TRIO, "toric", True, "setwise", True,
           description="inversion quotient of the F4 toric complement, over the 45 tritangent trios"),
    Recipe("D3_tp", 3, "F4", _TRIO, "projective", False, "setwise", True,
           description="projectivised F4 hyperplane complement, over the 45 tritangent trios"),
    Recipe("D3n_union_c", 3, union=("D3n", "D3c"), description="blown-up E6 torus"),
    Recipe("D3_2n_union_tn", 3, union=("D3_2n_hat", "D3_tn"), description="blown-up D5 tori"),
    Recipe("D3_3n_union_tp", 3, union=("D3_3n_hat", "D3_tp"), description="blown-up F4 tori"),
    Recipe("D4n", 4, "D5", (), "toric", description="(Z/2)^4 quotient of the D5 toric complement"),
    Recipe("D4c", 4, "D5", (), "projective", description="(Z/2)^4 quotient of the projectivised D5 complement"),
    Recipe("D4_2n_A4", 4, "A4", ("L",), "toric", stabilizer="pointwise",
           description="A4 tori induced from W(A4)"),
    Recipe("D4_2n_D4", 4, "D4", ("L-E5",), "toric", stabilizer="pointwise",
           description="D4 tori induced from W(D4)"),
    Recipe("D4_tn_A4", 4, "A4", ("L",), "projective", stabilizer="pointwise",
           description="projectivised A4 complements induced from W(A4)"),
    Recipe("D4_tn_D4", 4, "D4", ("L-E5",), "projective", stabilizer="pointwise",
           description="projectivised D4 complements induced from W(D4)"),
    Recipe("D4_3n", 4, "A3", ("L", "E5"), "toric", stabilizer="pointwise",
           description="A3 tori induced from W(A3)"),
    Recipe("D4_tp", 4, "A3", ("L", "E5"), "projective", stabilizer="pointwise",
           description="projectivised A3 complements induced from W(A3)"),
    Recipe("D4_4n", 4, "A2", ("L", "E4", "E5"), "toric", stabilizer="pointwise",
           description="A2 tori induced from W(A2)"),
]}

# Each root system type as it sits in a marked lattice: (degree, classes it is orthogonal to, long roots).
STANDARD_SYSTEMS = {
    "E6": (3, (), False),
    "D5": (4, (), False),
    "F4": (3, _TRIO, True),
    "D4": (4, ("L-E5",), False),
    "A4": (4, ("L",), False),
    "A3": (4, ("L", "E5"), False),
    "A2": (4, ("L", "E4", "E5"), False),
    "A1": (4, ("L", "E3", "E4", "E5"), False),
}


def standard_root_system(root_type: str):
    """The root system of the given type inside a del Pezzo lattice."""
    try:
        degree, ortho, long_roots = STANDARD_SYSTEMS[root_type]
    except KeyError:
        raise KeyError(f"unknown root system {root_type!r}; choose from {', '.join(STANDARD_SYSTEMS)}") from None
    ctx_lattice = del_pezzo_lattice(degree)
    vecs = [ctx_lattice.vector(c) for c in ortho]
    return build_root_system(ctx_lattice, root_type, orthogonal_to=vecs, include_long=long_roots)


POINTCOUNT_IDS = ("D3", "D4")
ALL_IDS = POINTCOUNT_IDS + tuple(RECIPES)


def build_recipe(identifier: str) -> Recipe:
    try:
        return RECIPES[identifier]
    except KeyError:
        raise KeyError(f"unknown moduli space {identifier!r}; choose from {', '.join(ALL_IDS)}") from None


@dataclass
class CohomologyTable:
    """Irreducible multiplicities of H^0, H^1, ... (rows) in a fixed column order."""

    space: str
    group: str
    columns: list[str]
    rows: list[list[int]]
    class_functions: list | None = field(default=None, repr=False)

    def degree(self, i: int) -> dict[str, int]:
        return {c: m for c, m in zip(self.columns, self.rows[i]) if m}

    def reordered(self, columns: list[str]) -> "CohomologyTable":
        idx = [self.columns.index(c) for c in columns]
        return CohomologyTable(self.space, self.group, list(columns),
                               [[r[i] for i in idx] for r in self.rows], self.class_functions)

    def dimensions(self, degrees: list[int]) -> list[int]:
        return [sum(m * d for m, d in zip(r, degrees)) for r in self.rows]


# -- group contexts ------------------------------------------------------------

class DegreeContext:
    """Marked lattice, Weyl group and character table for one degree."""

    def __init__(self, degree: int):
        self.degree = degree
        self.lattice = del_pezzo_lattice(degree)
        self.roots = build_root_system(self.lattice, {3: "E6", 4: "D5"}[degree])
        self.weyl = WeylGroup(self.roots)
        self.table = weyl_character_table(self.weyl)
        self._subgroups: dict = {}
        if degree == 4:
            self._setup_quotient()

    def stabilizer(self, classes: tuple[str, ...], setwise: bool):
        key = (classes, setwise)
        if key not in self._subgroups:
            vecs = [self.lattice.vector(c) for c in classes]
            self._subgroups[key] = self.weyl.stabilizer(vecs, setwise=setwise)
        return self._subgroups[key]

    # degree 4: W(D5) -> S5 via the five pairs of conic classes
    def _setup_quotient(self):
        amb = self.weyl.ambient_matrices
        conics = [self.lattice.vector(f"L-E{i}") for i in range(1, 6)]
        k = np.array(self.lattice.canonical, dtype=np.int64)
        pairs = {}
        for i, c in enumerate(conics):
            c = np.array(c, dtype=np.int64)
            pairs[tuple(c)] = i
            pairs[tuple(-k - c)] = i
        images = np.einsum("nij,kj->nki", amb, np.array(conics, dtype=np.int64))
        perms = np.array([[pairs[tuple(v)] for v in img.tolist()] for img in images], dtype=np.int64)
        self.pair_permutation = perms
        ident = np.arange(5)
        self.normal_subgroup = np.nonzero(np.all(perms == ident, axis=1))[0]
        if len(self.normal_subgroup) != 16:
            raise ModuliError("kernel of the action on conic pairs is not of order 16")
        self.s5, self.s5_types = symmetric_group_embedding(self.weyl, 5)
        self.s5_table = symmetric_table(self.s5.group, self.s5_types, 5)

    def quotient_class_function(self, f) -> ClassFunction:
        """(Z/2)^4-invariants of a W(D5) class function, as a class function on S5."""
        g = self.weyl.group
        cls = g.class_of
        vals = f.values if isinstance(f, ClassFunction) else f
        out = []
        for cl in self.s5.group.classes:
            s = int(self.s5.parent_index[cl.representative])
            tot = sum(vals[cls[g.mul(s, int(n))]] for n in self.normal_subgroup)
            if tot % len(self.normal_subgroup):
                raise ModuliError("(Z/2)^4-average is not integral")
            out.append(tot // len(self.normal_subgroup))
        return ClassFunction(self.s5.group, tuple(out))


@lru_cache(maxsize=None)
def degree_context(degree: int) -> DegreeContext:
    return DegreeContext(degree)


# -- arrangement posets ----------------------------------------------------------

_CACHE = Cache.from_environment()
_POSETS: dict = {}


def set_cache(cache: Cache) -> None:
    global _CACHE
    _CACHE = cache


def get_cache() -> Cache:
    return _CACHE


def arrangement_poset(roots, rank: int, kind: str, label: str = "") -> ArrangementPoset:
    """Poset of the given positive roots (L coordinates), memoised in memory and on disk."""
    roots = [tuple(int(x) for x in r) for r in roots]
    key = content_key("poset", label, kind, rank, roots)
    if key not in _POSETS:
        _POSETS[key] = _CACHE.fetch("poset", key, lambda: ArrangementPoset(roots, rank, kind),
                                    poset_to_text, poset_from_text)
    return _POSETS[key]


def root_system_for(recipe: Recipe):
    ctx = degree_context(recipe.degree)
    vecs = [ctx.lattice.vector(c) for c in recipe.orthogonal_to]
    return build_root_system(ctx.lattice, recipe.root_type, orthogonal_to=vecs,
                             include_long=recipe.include_long)


def poset_for(recipe: Recipe) -> ArrangementPoset:
    rs = root_system_for(recipe)
    kind = "toric" if recipe.kind == "toric" else "linear"
    pos = rs.roots_in_basis[rs.positive]
    return arrangement_poset(pos, rs.rank, kind, f"{rs.type_label}:{recipe.orthogonal_to}")


def restrict_to_sublattice(m: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Matrix (column convention) of the ambient matrix m on the lattice spanned by the rows of basis."""
    h = [list(map(int, r)) for r in basis]
    cols = []
    for b in basis:
        c = il.in_row_space(h, [int(x) for x in m @ b])
        if c is None:
            raise ModuliError("element does not preserve the sublattice")
        cols.append(c)
    return np.array(cols, dtype=np.int64).T


def _acting_group(recipe: Recipe):
    """(subgroup or None, list of ambient element indices, one per class of the acting group)."""
    ctx = degree_context(recipe.degree)
    if recipe.stabilizer is None:
        return None, [c.representative for c in ctx.weyl.classes]
    sub = ctx.stabilizer(recipe.orthogonal_to, recipe.stabilizer == "setwise")
    return sub, [int(sub.parent_index[c.representative]) for c in sub.group.classes]


def equivariant_polynomials(recipe: Recipe) -> list[tuple[int, ...]]:
    """Compact-support polynomial of the (unquotiented) component per class of the acting group."""
    ctx = degree_context(recipe.degree)
    rs = root_system_for(recipe)
    poset = poset_for(recipe)
    _, elements = _acting_group(recipe)
    out = []
    for e in elements:
        g = restrict_to_sublattice(ctx.weyl.ambient_matrices[e], rs.lattice_basis)
        p = poset.equivariant_poincare(g)
        if recipe.twist:
            p = quotient_average([p, poset.equivariant_poincare(-g)])
        if recipe.kind == "projective":
            try:
                p = projectivize(p)
            except ArithmeticError as exc:
                raise ArrangementError("projectivization is not exact") from exc
        out.append(p)
    return out


def dimension(recipe: Recipe) -> int:
    if recipe.is_union:
        return dimension(RECIPES[recipe.union[0]])
    rank = root_system_for(recipe).rank
    return rank if recipe.kind == "toric" else rank - 1


def ordinary_class_functions(recipe: Recipe) -> list[ClassFunction]:
    """Class functions of H^0..H^dim on the full Weyl group (after induction)."""
    ctx = degree_context(recipe.degree)
    sub, _ = _acting_group(recipe)
    dim = dimension(recipe)
    polys = equivariant_polynomials(recipe)
    per_class = [ordinary_from_compact(p, dim) for p in polys]
    group = sub.group if sub is not None else ctx.weyl.group
    out = []
    for k in range(dim + 1):
        f = ClassFunction(group, tuple(v[k] for v in per_class))
        out.append(induce(sub, f) if sub is not None else f)
    return out


@lru_cache(maxsize=None)
def compute_cohomology(identifier: str) -> CohomologyTable:
    """Multiplicity table of an arrangement space (or union) in ordinary degrees."""
    if identifier in POINTCOUNT_IDS:
        from . import sieve

        return sieve.d3_cohomology() if identifier == "D3" else sieve.d4_cohomology()
    recipe = build_recipe(identifier)
    if recipe.is_union:
        return _union(recipe)
    ctx = degree_context(recipe.degree)
    fs = ordinary_class_functions(recipe)
    if recipe.degree == 3:
        table, columns, group = ctx.table, ref.E6_COLUMNS, "W(E6)"
    else:
        fs = [ctx.quotient_class_function(f) for f in fs]
        table, columns, group = ctx.s5_table, ref.S5_COLUMNS, "S5"
    rows = []
    for f in fs:
        mults = dict(zip(table.labels, table.decompose(f)))
        if any(m < 0 for m in mults.values()):
            raise ModuliError(f"negative multiplicity in {identifier}")
        rows.append([mults[c] for c in columns])
    while rows and not any(rows[-1]):
        rows.pop()
        fs = fs[:-1]
    return CohomologyTable(identifier, group, list(columns), rows, fs)


def _union(recipe: Recipe) -> CohomologyTable:
    from .arrangements import blowup_combine

    tor = compute_cohomology(recipe.union[0])
    proj = compute_cohomology(recipe.union[1])
    rows = [list(map(int, r)) for r in blowup_combine(tor.rows, proj.rows)]
    while rows and not any(rows[-1]):
        rows.pop()
    if any(x < 0 for r in rows for x in r):
        raise ModuliError(f"negative multiplicity in {recipe.identifier}")
    return CohomologyTable(recipe.identifier, tor.group, list(tor.columns), rows)


def reference_table(identifier: str) -> list[list[int]] | None:
    if identifier in ref.E6_TABLES:
        return ref.E6_TABLES[identifier]
    return ref.S5_TABLES.get(identifier)
