"""Cohomology of the point-configuration spaces as Weyl group representations.

Degree 4: the S5 representations from point counts lift uniquely to W(D5)
through the quotient by the (Z/2)^4 acting trivially on the conic pairs.

Degree 3: point counts give H^i as S6 representations.  Candidate W(E6)
representations restricting to those are bounded above by the arrangement
spaces the configuration space maps into, then filtered by positivity of
twisted point counts and by the Euler characteristic of the fibration over
the degree-4 space (plain and twisted by complex conjugation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import pointcount as pc
from . import reference as ref
from .cache import content_key, polys_from_text, polys_to_text
from .chartab import ClassFunction, restrict, symmetric_table
from .moduli import CohomologyTable, ModuliError, compute_cohomology, degree_context, get_cache
from .finitegeom import ZERO
from .weyl import cycle_type, symmetric_group_embedding

COMPARISON_SPACES = ("D3n_union_c", "D3_2n_union_tn", "D3_3n_union_tp",
                     "D3n", "D3c", "D3_2n_hat", "D3_tn", "D3_3n_hat")
POSITIVITY_QS = (2, 3, 5)


class SieveError(ModuliError):
    pass


# -- point counts ---------------------------------------------------------------

@lru_cache(maxsize=None)
def pointcount_polynomials(n: int, qs: tuple[int, ...] = pc.DEFAULT_SAMPLES) -> dict:
    """{cycle type: CountPolynomial}, cached on disk as coefficient rows."""
    cts = [tuple(p) for p in pc.partitions(n)]
    key = content_key("pointcount", n, qs, cts)

    def compute():
        polys = pc.count_polynomials(n, qs)
        return [polys[ct].coefficients for ct in cts]

    rows = get_cache().fetch("polys", key, compute, lambda v: polys_to_text(v, f"P{n}"), polys_from_text)
    return {ct: pc.CountPolynomial(tuple(r)) for ct, r in zip(cts, rows)}


@lru_cache(maxsize=None)
def pointcount_table(n: int) -> CohomologyTable:
    """H^i of the n-point configuration space as an S_n representation."""
    columns = ref.S5_COLUMNS if n == 5 else ref.S6_COLUMNS
    return pc.counts_to_cohomology(pointcount_polynomials(n), n, columns)


# -- degree 4 -------------------------------------------------------------------

def _inflation_lifts(ctx, s5_char) -> list[str]:
    """W(D5) irreducibles trivial on (Z/2)^4 whose restriction to S5 is ``s5_char``."""
    w = ctx.weyl.group
    table = ctx.table
    one = w.identity_index
    kernel_classes = {int(w.class_of[n]) for n in ctx.normal_subgroup}
    out = []
    for label, row in zip(table.labels, table.values):
        deg = int(row[w.class_of[one]])
        if any(int(row[c]) != deg for c in kernel_classes):
            continue
        res = restrict(ctx.s5, row)
        if tuple(int(x) for x in res.values) == tuple(int(x) for x in s5_char):
            out.append(label)
    return out


@lru_cache(maxsize=None)
def d4_cohomology() -> CohomologyTable:
    """H^i of the degree-4 space as W(D5) representations."""
    ctx = degree_context(4)
    s5 = pointcount_table(5)
    s5t = symmetric_table(ctx.s5.group, ctx.s5_types, 5)
    rows, fs = [], []
    _, types = pc.symmetric_group(5)
    for f in s5.class_functions:
        # point-count S5 classes -> embedded S5 classes, matched by cycle type
        by_type = dict(zip(types, f.values))
        char = tuple(by_type[t] for t in ctx.s5_types)
        mults = dict(zip(s5t.labels, s5t.decompose(ClassFunction(ctx.s5.group, char))))
        lifted = ClassFunction(ctx.weyl.group, (0,) * len(ctx.weyl.group.classes))
        counts = {}
        for lab, m in mults.items():
            if m == 0:
                continue
            chi = tuple(int(x) for x in s5t.values[s5t.index(lab)])
            lifts = _inflation_lifts(ctx, chi)
            if len(lifts) != 1:
                raise SieveError(f"{lab} has {len(lifts)} inflated lifts to W(D5)")
            counts[lifts[0]] = counts.get(lifts[0], 0) + m
            lifted = lifted + ctx.table.character(lifts[0]).scale(m)
        rows.append([counts.get(lab, 0) for lab in ctx.table.labels])
        fs.append(lifted)
    return CohomologyTable("D4", "W(D5)", list(ctx.table.labels), rows, fs)


# -- degree 3: restriction and comparison data -----------------------------------

@dataclass
class SieveData:
    """Everything the sieve needs, with W(E6) data in the published column order."""

    characters: np.ndarray        # (25 irreducibles, W(E6) classes)
    restriction: np.ndarray       # (11 S6 irreducibles, 25)
    s6_rows: list[list[int]]      # H^i as S6 multiplicities
    bounds: dict[str, list[list[int]]]
    class_orders: list[int]

    def upper_bound(self, degree: int) -> np.ndarray:
        ub = None
        for rows in self.bounds.values():
            row = np.array(rows[degree] if degree < len(rows) else [0] * len(ref.E6_COLUMNS))
            ub = row if ub is None else np.minimum(ub, row)
        return ub


@lru_cache(maxsize=None)
def s6_embedding():
    ctx = degree_context(3)
    return symmetric_group_embedding(ctx.weyl, 6)


def restriction_matrix() -> np.ndarray:
    """Column j: S6 multiplicities of the j-th W(E6) irreducible."""
    ctx = degree_context(3)
    sub, types = s6_embedding()
    st = symmetric_table(sub.group, types, 6)
    cols = []
    for lab in ref.E6_COLUMNS:
        res = restrict(sub, ctx.table.values[ctx.table.index(lab)])
        mults = dict(zip(st.labels, st.decompose(res)))
        cols.append([mults[c] for c in ref.S6_COLUMNS])
    return np.array(cols, dtype=np.int64).T


def sieve_data(comparisons=COMPARISON_SPACES) -> SieveData:
    ctx = degree_context(3)
    chars = np.array([ctx.table.values[ctx.table.index(l)] for l in ref.E6_COLUMNS], dtype=np.int64)
    bounds = {}
    for ident in comparisons:
        t = compute_cohomology(ident)
        if t.columns != list(ref.E6_COLUMNS):
            t = t.reordered(ref.E6_COLUMNS)
        bounds[ident] = t.rows
    return SieveData(chars, restriction_matrix(), pointcount_table(6).rows, bounds,
                     [cl.order for cl in ctx.weyl.group.classes])


# -- the sieve -------------------------------------------------------------------

@dataclass
class SieveState:
    known: dict[int, tuple[int, ...]] = field(default_factory=dict)
    candidates: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)
    log: list[str] = field(default_factory=list)
    stages: dict[str, list] = field(default_factory=dict)

    def note(self, msg: str) -> None:
        self.log.append(msg)


def bounded_solutions(restriction: np.ndarray, target, upper) -> list[tuple[int, ...]]:
    """All x with 0 <= x <= upper and restriction @ x == target (entries >= 0)."""
    r = np.asarray(restriction, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    upper = np.asarray(upper, dtype=np.int64)
    nvar = r.shape[1]
    order = sorted(range(nvar), key=lambda j: -int(r[:, j].sum()))
    # capacity[k]: most that variables order[k:] can still contribute
    capacity = np.zeros((nvar + 1, r.shape[0]), dtype=np.int64)
    for k in range(nvar - 1, -1, -1):
        j = order[k]
        capacity[k] = capacity[k + 1] + r[:, j] * upper[j]
    out = []
    x = [0] * nvar

    def rec(k: int, rem: np.ndarray):
        if np.any(capacity[k] < rem):
            return
        if k == nvar:
            out.append(tuple(x))
            return
        j = order[k]
        col = r[:, j]
        top = int(upper[j])
        pos = col > 0
        if pos.any():
            top = min(top, int(np.min(rem[pos] // col[pos])))
        for v in range(top, -1, -1):
            x[j] = v
            rec(k + 1, rem - v * col)
        x[j] = 0

    rec(0, target)
    return sorted(out)


def sieve_candidates(data: SieveData, state: SieveState | None = None) -> SieveState:
    state = state or SieveState()
    for i, row in enumerate(data.s6_rows):
        sols = bounded_solutions(data.restriction, row, data.upper_bound(i))
        if not sols:
            raise SieveError(f"no W(E6) representation fits H^{i}")
        if len(sols) == 1:
            state.known[i] = sols[0]
        else:
            state.candidates[i] = sols
        state.note(f"H^{i}: {len(sols)} candidate(s) within {len(data.bounds)} comparison bounds")
    return state


def traces(data: SieveData, mults) -> np.ndarray:
    return np.asarray(mults, dtype=np.int64) @ data.characters


def _assignments(state: SieveState, degrees):
    pools = [[state.known[i]] if i in state.known else state.candidates[i] for i in degrees]
    return itertools.product(*pools)


def twisted_count(data: SieveData, rows, q: int) -> np.ndarray:
    """Point counts sum_i (-1)^i Tr(g, H^i) q^(dim - i) over all classes."""
    dim = len(rows) - 1
    tot = np.zeros(data.characters.shape[1], dtype=object)
    for i, m in enumerate(rows):
        tot = tot + (-1) ** i * traces(data, m).astype(object) * q ** (dim - i)
    return tot


def positivity_filter(data: SieveData, state: SieveState, qs=POSITIVITY_QS, prune=(3,)) -> SieveState:
    """Discard (H^3, H^4) assignments with a negative twisted count.

    Only the degrees in ``prune`` lose candidates (a candidate stays if some
    surviving assignment uses it); the others are left to the Euler filters.
    """
    degrees = list(range(len(data.s6_rows)))
    survivors = []
    for rows in _assignments(state, degrees):
        if all(np.all(twisted_count(data, rows, q) >= 0) for q in qs):
            survivors.append(rows)
    if not survivors:
        raise SieveError("positivity discards every assignment")
    for i in degrees:
        if i not in state.candidates:
            continue
        keep = sorted({rows[i] for rows in survivors})
        if i not in prune:
            state.note(f"positivity at q={','.join(map(str, qs))}: H^{i} kept at {len(state.candidates[i])} "
                       f"({len(keep)} occur in a nonnegative assignment)")
            continue
        state.note(f"positivity at q={','.join(map(str, qs))}: H^{i} {len(state.candidates[i])} -> {len(keep)}")
        state.candidates[i] = keep
        if len(keep) == 1:
            state.known[i] = keep[0]
            del state.candidates[i]
    return state


@dataclass
class EulerClasses:
    """Classes of W(D5) = Stab(E6) where the degree-4 Euler characteristic vanishes."""

    signed: list[int]            # W(D5) class indices
    twisted: list[int]
    signed_new: list[int]        # fused W(E6) classes not met by S6
    twisted_new: list[int]
    orders_signed: list[int]
    orders_twisted: list[int]


def _conic_pair_permutation(ctx3, g_index: int) -> list[int]:
    """Permutation of the five conic pairs of the degree-4 surface obtained by
    contracting E6, for an element fixing E6."""
    lat = ctx3.lattice
    m = ctx3.weyl.ambient_matrices[g_index]
    conics = [np.array(lat.vector(f"L-E{i}"), dtype=np.int64) for i in range(1, 6)]
    k4 = np.array(lat.vector("-3L+E1+E2+E3+E4+E5"), dtype=np.int64)
    pairs = {}
    for i, c in enumerate(conics):
        pairs[tuple(c)] = i
        pairs[tuple(-k4 - c)] = i
    return [pairs[tuple((m @ c).tolist())] for c in conics]


def euler_classes(data: SieveData) -> EulerClasses:
    ctx3 = degree_context(3)
    d4s5 = pointcount_table(5).class_functions
    _, s5types = pc.symmetric_group(5)
    signed_by_type = {t: sum((-1) ** i * f.values[c] for i, f in enumerate(d4s5)) for c, t in enumerate(s5types)}
    free_by_type = {t: sum(f.values[c] for f in d4s5) for c, t in enumerate(s5types)}
    stab = ctx3.stabilizer(("E6",), False)
    fusion = stab.fusion()
    sub6, _ = s6_embedding()
    s6_classes = set(int(c) for c in sub6.fusion())
    signed, twisted = [], []
    for c, cl in enumerate(stab.group.classes):
        g = int(stab.parent_index[cl.representative])
        t = cycle_type(_conic_pair_permutation(ctx3, g))
        if signed_by_type[t] == 0:
            signed.append(c)
        if free_by_type[t] == 0:
            twisted.append(c)

    def new(cs):
        return sorted({int(fusion[c]) for c in cs} - s6_classes)

    orders = lambda cs: [stab.group.classes[c].order for c in cs]
    return EulerClasses(signed, twisted, new(signed), new(twisted), orders(signed), orders(twisted))


def euler_filters(data: SieveData, state: SieveState) -> SieveState:
    """Discard H^4 candidates whose Euler characteristic (plain, then twisted by
    complex conjugation) is nonzero where the degree-4 one vanishes."""
    if 4 not in state.candidates:
        return state
    ec = euler_classes(data)
    fixed = [state.known[i] for i in range(4)]
    base_signed = sum((-1) ** i * traces(data, m) for i, m in enumerate(fixed))
    base_free = sum(traces(data, m) for m in fixed)
    state.note(f"Euler: {len(ec.signed)} W(D5) classes with vanishing signed value "
               f"(orders {ec.orders_signed}), {len(ec.signed_new)} not met by S6")
    cands = state.candidates[4]
    kept = []
    for x in cands:
        vals = base_signed + traces(data, x)
        if all(vals[c] == 0 for c in ec.signed_new):
            kept.append(x)
    state.note(f"signed Euler filter: H^4 {len(cands)} -> {len(kept)}")
    state.stages["signed"] = list(kept)
    state.note(f"Euler twisted: {len(ec.twisted)} W(D5) classes with vanishing sign-free value, "
               f"{len(ec.twisted_new)} not met by S6")
    kept2 = []
    for x in kept:
        vals = base_free + traces(data, x)
        if all(vals[c] == 0 for c in ec.twisted_new):
            kept2.append(x)
    state.note(f"twisted Euler filter: H^4 {len(kept)} -> {len(kept2)}")
    if not kept2:
        raise SieveError("Euler filters discard every H^4 candidate")
    state.candidates[4] = kept2
    if len(kept2) == 1:
        state.known[4] = kept2[0]
        del state.candidates[4]
    return state


@dataclass
class SieveRun:
    data: SieveData
    after_bounds: SieveState
    after_positivity: SieveState
    final: SieveState
    euler: EulerClasses


def _copy(state: SieveState) -> SieveState:
    return SieveState(dict(state.known), {k: list(v) for k, v in state.candidates.items()},
                      list(state.log), dict(state.stages))


@lru_cache(maxsize=None)
def run_sieve() -> SieveRun:
    data = sieve_data()
    s1 = sieve_candidates(data)
    s2 = positivity_filter(data, _copy(s1))
    s3 = euler_filters(data, _copy(s2))
    return SieveRun(data, s1, s2, s3, euler_classes(data))


@lru_cache(maxsize=None)
def d3_cohomology() -> CohomologyTable:
    run = run_sieve()
    if run.final.candidates:
        raise SieveError(f"undetermined degrees {sorted(run.final.candidates)}")
    degrees = range(len(run.data.s6_rows))
    rows = [list(run.final.known[i]) for i in degrees]
    ctx = degree_context(3)
    fs = [ClassFunction(ctx.weyl.group, tuple(int(v) for v in traces(run.data, r))) for r in rows]
    return CohomologyTable("D3", "W(E6)", list(ref.E6_COLUMNS), rows, fs)


def as_dict(mults, columns=ref.E6_COLUMNS) -> dict[str, int]:
    return {c: int(m) for c, m in zip(columns, mults) if m}


def format_rep(mults, columns=ref.E6_COLUMNS) -> str:
    parts = []
    for c, m in zip(columns, mults):
        if m:
            parts.append(c if m == 1 else f"{m}*{c}")
    return " + ".join(parts) if parts else "0"


# -- the fibration over the degree-4 space ------------------------------------------

def five_point_betti() -> list[int]:
    """Betti numbers of P^2 minus the six lines through pairs of a frame, which is
    the space of a fifth point in general position; Orlik-Solomon via A3."""
    from .arrangements import ArrangementPoset, ordinary_from_compact, projectivize

    roots = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]
    poset = ArrangementPoset(roots, 3, "linear")
    p = projectivize(poset.equivariant_poincare(np.eye(3, dtype=np.int64)))
    return ordinary_from_compact(p, 2)


def fibre_count(q: int) -> int:
    """F_q-points of P^2 off the ten lines and the conic through five general points."""
    from .finitegeom import FiniteField, general_position, projective_points

    f = FiniteField.of_order(q)
    pts = projective_points(f)
    chosen: list = []
    for p in pts:
        if general_position(f, chosen + [p], check_conic=False):
            chosen.append(p)
            if len(chosen) == 5:
                break
    if len(chosen) < 5:
        raise SieveError(f"no five points in general position over F_{q}")
    conic = f.nullspace([[f.mul(x, x), f.mul(y, y), f.mul(z, z), f.mul(x, y), f.mul(x, z), f.mul(y, z)]
                         for x, y, z in chosen])
    if len(conic) != 1:
        raise SieveError("the conic through five general points is not unique")
    c = conic[0]
    count = 0
    for x, y, z in pts:
        mons = [f.mul(x, x), f.mul(y, y), f.mul(z, z), f.mul(x, y), f.mul(x, z), f.mul(y, z)]
        val = ZERO
        for a, b in zip(c, mons):
            val = f.add(val, f.mul(a, b))
        if val == ZERO:
            continue
        if any(f.det3(a, b, (x, y, z)) == ZERO for a, b in itertools.combinations(chosen, 2)):
            continue
        count += 1
    return count


def fibre_betti(qs=(7, 8, 9, 11)) -> list[int]:
    poly = pc.interpolate([(q, fibre_count(q)) for q in qs], 2)
    return pc.traces_from_polynomial(poly)


def fibration_check() -> dict[str, list[int]]:
    """Poincare polynomials of base, fibre, their product, and the six-point space."""
    from .arrangements import poly_mul

    base = five_point_betti()
    fibre = fibre_betti()
    six = pc.traces_from_polynomial(pointcount_polynomials(6)[(1,) * 6])
    return {"base": base, "fibre": fibre, "product": list(poly_mul(base, fibre)), "points": six}
