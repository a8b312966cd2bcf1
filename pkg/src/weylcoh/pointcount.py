"""Frobenius-twisted point counts of ordered point configurations in P^2.

For a permutation sigma of the slots, ``count_fixed`` counts PGL3(F_q)-orbits
of n-tuples (n = 5, 6) of points of P^2 over the algebraic closure, in
general position (no three collinear, and for n = 6 not on a conic), with
``P[sigma(i)] = F(P[i])`` for the q-Frobenius F.  A cycle of length c is
determined by one point of P^2(F_{q^c}), so only cycle types matter.

Two enumeration strategies are used:

* frame: when some cycles cover exactly four slots, those four points form
  an F-stable frame.  PGL3(F_q) acts simply transitively on such frames of a
  given type, so the orbit count is the number of completions of one fixed
  frame.
* subspace: otherwise the longest cycle has length L >= 3.  A generating
  point [a:b:c] has F_q-independent coordinates, and up to PGL3(F_q) and
  scaling it is the 3-dimensional F_q-subspace span(a, b, c) of F_{q^L}.
  Summing completions over the subspaces containing 1 counts every orbit
  q^2 + q + 1 times.

``count_fixed_bruteforce`` enumerates raw ordered tuples and is the oracle
for both.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chartab import ClassFunction, partition_label, partitions, symmetric_table
from .finitegeom import ZERO, FiniteField, make_field, pgl3_order, prime_power, projective_points
from .groups import PermGroup

DEFAULT_SAMPLES = (2, 3, 4, 5)
DEFAULT_BUDGET = 50_000_000


class PointCountError(RuntimeError):
    pass


class BudgetExceeded(PointCountError):
    pass


@dataclass(frozen=True)
class TwistedCountTask:
    n: int
    cycle_type: tuple[int, ...]
    q: int

    def __post_init__(self):
        ct = tuple(sorted((int(c) for c in self.cycle_type), reverse=True))
        object.__setattr__(self, "cycle_type", ct)
        if self.n not in (5, 6):
            raise ValueError("n must be 5 or 6")
        if sum(ct) != self.n or any(c < 1 for c in ct):
            raise ValueError(f"{ct} is not a partition of {self.n}")
        prime_power(self.q)

    @property
    def period(self) -> int:
        return math.lcm(*self.cycle_type)


@dataclass(frozen=True)
class CountPolynomial:
    """Integer polynomial in q, coefficients from q^0 upward."""

    coefficients: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, q: int) -> int:
        return sum(c * q ** i for i, c in enumerate(self.coefficients))

    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.dim, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mag = abs(c)
            body = {0: str(mag), 1: "q"}.get(i, f"q^{i}")
            if i > 0 and mag != 1:
                body = f"{mag}{body}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([first] + [f"{s} {b}" for s, b in terms[1:]])


# -- geometry helpers -----------------------------------------------------------

class _Plane:
    """Incremental general-position bookkeeping over one finite field."""

    def __init__(self, f: FiniteField, q: int, n: int):
        self.f = f
        self.q = q
        self.n = n
        self._points: dict[int, list] = {}

    def points(self, level_order: int) -> list:
        if level_order not in self._points:
            self._points[level_order] = projective_points(self.f, self.f.subfield(level_order))
        return self._points[level_order]

    def orbit(self, pt, length: int) -> list:
        out = [pt]
        for _ in range(length - 1):
            pt = tuple(self.f.frob(x, self.q) for x in pt)
            out.append(pt)
        return out

    def compatible(self, old: list, new: list) -> bool:
        """No repeats and no collinear triple meeting ``new``."""
        f = self.f
        seen = set(old)
        for p in new:
            if p in seen:
                return False
            seen.add(p)
        pts = old + new
        k0 = len(old)
        for k in range(k0, len(pts)):
            c = pts[k]
            for i, j in itertools.combinations(range(k), 2):
                if f.det3(pts[i], pts[j], c) == ZERO:
                    return False
        return True

    def off_conic(self, pts: list) -> bool:
        if len(pts) < 6:
            return True
        f = self.f
        rows = []
        for x, y, z in pts:
            rows.append([f.mul(x, x), f.mul(y, y), f.mul(z, z), f.mul(x, y), f.mul(x, z), f.mul(y, z)])
        return f.det(rows) != ZERO

    def completions(self, base: list, cycles) -> int:
        """Ways to add one F-orbit per remaining cycle length."""
        if not cycles:
            return 1 if self.off_conic(base) else 0
        c, rest = cycles[0], cycles[1:]
        total = 0
        for pt in self.points(self.q ** c):
            new = self.orbit(pt, c)
            if self.compatible(base, new):
                total += self.completions(base + new, rest)
        return total

    def first_configuration(self, cycles) -> list | None:
        def rec(base, cs):
            if not cs:
                return base
            for pt in self.points(self.q ** cs[0]):
                new = self.orbit(pt, cs[0])
                if self.compatible(base, new):
                    found = rec(base + new, cs[1:])
                    if found is not None:
                        return found
            return None

        return rec([], list(cycles))


def _field_for(task: TwistedCountTask):
    p, e = prime_power(task.q)
    return make_field(p, e, task.period).field


def _frame_split(cycle_type) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Some cycles covering exactly four slots, and the rest."""
    parts = list(cycle_type)
    for r in range(1, 5):
        for idx in itertools.combinations(range(len(parts)), r):
            if sum(parts[i] for i in idx) == 4:
                frame = tuple(parts[i] for i in idx)
                rest = tuple(parts[i] for i in range(len(parts)) if i not in idx)
                return frame, rest
    return None


def strategy_for(cycle_type) -> str:
    return "frame" if _frame_split(cycle_type) is not None else "subspace"


def estimated_work(task: TwistedCountTask) -> int:
    q = task.q
    split = _frame_split(task.cycle_type)
    if split is not None:
        rest = split[1]
    else:
        L = task.cycle_type[0]
        rest = task.cycle_type[1:]
        # Gaussian binomial [L-1, 2]_q
        num = (q ** (L - 1) - 1) * (q ** (L - 2) - 1)
        work = num // ((q * q - 1) * (q - 1))
        for c in rest:
            work *= q ** (2 * c) + q ** c + 1
        return work
    work = 1
    for c in rest:
        work *= q ** (2 * c) + q ** c + 1
    return work


def _subspace_generators(f: FiniteField, q: int, L: int):
    """Points [1:x:y] with span_Fq(1, x, y) running once over the 3-dim
    F_q-subspaces of F_{q^L} that contain 1."""
    step = (f.size - 1) // (q ** L - 1)
    basis = [(k * step) % (f.size - 1) for k in range(L)]  # alpha^k, alpha generating F_{q^L}
    scalars = f.subfield(q)

    def combos(lead: int, free: list[int]):
        for coeffs in itertools.product(scalars, repeat=len(free)):
            acc = basis[lead]
            for c, k in zip(coeffs, free):
                if c != ZERO:
                    acc = f.add(acc, f.mul(c, basis[k]))
            yield acc

    for i, j in itertools.combinations(range(1, L), 2):
        free_i = [k for k in range(i + 1, L) if k != j]
        free_j = list(range(j + 1, L))
        for x in combos(i, free_i):
            for y in combos(j, free_j):
                yield (f.one, x, y)


def count_fixed(task: TwistedCountTask, *, budget: int = DEFAULT_BUDGET) -> int:
    """Number of PGL3(F_q)-orbits of Frobenius-twisted configurations."""
    work = estimated_work(task)
    if work > budget:
        raise BudgetExceeded(f"{task}: about {work} steps exceeds the budget {budget}")
    f = _field_for(task)
    plane = _Plane(f, task.q, task.n)
    split = _frame_split(task.cycle_type)
    if split is not None:
        frame, rest = split
        base = plane.first_configuration(frame)
        if base is None:
            raise PointCountError(f"no F-stable frame of type {frame} over F_{task.q}")
        return plane.completions(base, rest)
    L, rest = task.cycle_type[0], task.cycle_type[1:]
    if L < 3:
        raise PointCountError(f"no strategy for {task.cycle_type}")
    total = 0
    for pt in _subspace_generators(f, task.q, L):
        new = plane.orbit(pt, L)
        if plane.compatible([], new):
            total += plane.completions(new, rest)
    weight = task.q * task.q + task.q + 1
    if total % weight:
        raise PointCountError(f"{task}: subspace sum {total} not divisible by {weight}")
    return total // weight


def raw_count(task: TwistedCountTask, **kw) -> int:
    """Ordered tuples: orbits times |PGL3(F_q)| (the action is free)."""
    return count_fixed(task, **kw) * pgl3_order(task.q)


def permutation_cycles(sigma) -> list[list[int]]:
    seen, out = set(), []
    for s in range(len(sigma)):
        if s in seen:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = sigma[x]
        out.append(cyc)
    return out


def count_fixed_bruteforce(sigma, q: int, *, convention: str = "forward") -> tuple[int, int]:
    """(raw ordered count, orbit count) by direct enumeration.

    ``forward``: P[sigma(i)] = F(P[i]);  ``backward``: P[i] = F(P[sigma(i)]).
    """
    sigma = [int(s) for s in sigma]
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("not a permutation")
    if convention not in ("forward", "backward"):
        raise ValueError("convention must be 'forward' or 'backward'")
    cycles = permutation_cycles(sigma)
    task = TwistedCountTask(n, tuple(len(c) for c in cycles), q)
    f = _field_for(task)
    plane = _Plane(f, q, n)

    def place(slots: dict, cyc, pt):
        orb = plane.orbit(pt, len(cyc))
        for k, i in enumerate(cyc):
            slots[i] = orb[k] if convention == "forward" else orb[(-k) % len(cyc)]

    def rec(slots: dict, idx: int) -> int:
        if idx == len(cycles):
            pts = [slots[i] for i in range(n)]
            return 1 if plane.off_conic(pts) else 0
        cyc = cycles[idx]
        old = list(slots.values())
        total = 0
        for pt in plane.points(q ** len(cyc)):
            trial = dict(slots)
            place(trial, cyc, pt)
            if plane.compatible(old, [trial[i] for i in cyc]):
                total += rec(trial, idx + 1)
        return total

    raw = rec({}, 0)
    order = pgl3_order(q)
    if raw % order:
        raise PointCountError(f"raw count {raw} not divisible by |PGL3(F_{q})| = {order}")
    return raw, raw // order


def representative_permutation(cycle_type) -> list[int]:
    sigma, start = [], 0
    for c in cycle_type:
        sigma += [start + (k + 1) % c for k in range(c)]
        start += c
    return sigma


# -- interpolation and cohomology -----------------------------------------------

def interpolate(samples, dim: int) -> CountPolynomial:
    """Unique monic integer polynomial of degree ``dim`` through the samples.

    The first ``dim`` distinct q's determine it; later samples verify it.
    For ``dim == 0`` the samples must be constant and the constant is returned.
    """
    pts: dict[int, int] = {}
    for q, v in samples:
        if q in pts and pts[q] != v:
            raise PointCountError(f"conflicting samples at q={q}")
        pts[int(q)] = int(v)
    qs = list(pts)
    if dim == 0:
        if len(set(pts.values())) > 1:
            raise PointCountError("samples are not constant")
        return CountPolynomial((pts[qs[0]],)) if qs else CountPolynomial((0,))
    if len(qs) < dim:
        raise PointCountError(f"need {dim} distinct samples, got {len(qs)}")
    fit = qs[:dim]
    # Newton interpolation of v - q^dim through ``fit``
    ys = [Fraction(pts[q] - q ** dim) for q in fit]
    coef = list(ys)
    for j in range(1, dim):
        for i in range(dim - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (fit[i] - fit[i - j])
    poly = [Fraction(0)] * max(dim, 1)
    for i in range(dim - 1, -1, -1):
        # poly = poly * (x - fit[i]) + coef[i]
        nxt = [Fraction(0)] * len(poly)
        for k in range(len(poly) - 1, -1, -1):
            if k + 1 < len(nxt):
                nxt[k + 1] += poly[k]
            nxt[k] -= fit[i] * poly[k]
        nxt[0] += coef[i]
        poly = nxt
    out = []
    for c in poly[:dim]:
        if c.denominator != 1:
            raise PointCountError(f"non-integral coefficient {c}")
        out.append(int(c))
    out.append(1)
    result = CountPolynomial(tuple(out))
    for q in qs[dim:]:
        if result(q) != pts[q]:
            raise PointCountError(f"verification failed at q={q}: {result(q)} != {pts[q]}")
    return result


def symmetric_group(n: int) -> tuple[PermGroup, list[tuple[int, ...]]]:
    """S_n on n points, with the cycle type of each class."""
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(p)
    g = PermGroup(gens)
    types = [tuple(sorted((len(c) for c in permutation_cycles(g.elements[cl.representative])), reverse=True))
             for cl in g.classes]
    return g, types


def traces_from_polynomial(poly: CountPolynomial) -> list[int]:
    """Tr(sigma, H^i) = (-1)^(dim-i) * coefficient of q^(dim-i), i = 0..dim."""
    d = poly.dim
    return [(-1) ** (d - i) * poly.coefficients[d - i] for i in range(d + 1)]


def counts_to_cohomology(polys: dict, n: int, columns=None):
    """Decompose the minimally pure traces into S_n-irreducibles."""
    from .moduli import CohomologyTable

    group, types = symmetric_group(n)
    missing = [t for t in types if t not in polys]
    if missing:
        raise PointCountError(f"no polynomial for cycle types {missing}")
    dims = {polys[t].dim for t in types}
    if len(dims) != 1:
        raise PointCountError("polynomials of different degrees")
    dim = dims.pop()
    table = symmetric_table(group, types, n)
    columns = list(columns) if columns is not None else [partition_label(s) for s in partitions(n)]
    rows, fs = [], []
    for i in range(dim + 1):
        f = ClassFunction(group, tuple(traces_from_polynomial(polys[t])[i] for t in types))
        mults = dict(zip(table.labels, table.decompose(f)))
        if any(m < 0 for m in mults.values()):
            raise PointCountError(f"negative multiplicity in degree {i}")
        rows.append([mults[c] for c in columns])
        fs.append(f)
    return CohomologyTable(f"P{n}", f"S{n}", columns, rows, fs)


def _count_one(args):
    n, ct, q, budget = args
    return count_fixed(TwistedCountTask(n, ct, q), budget=budget)


def count_samples(n: int, qs=DEFAULT_SAMPLES, *, cycle_types=None, workers: int = 1,
                  budget: int = DEFAULT_BUDGET) -> dict:
    """{cycle type: [(q, orbit count), ...]} for every requested task."""
    cts = [tuple(p) for p in partitions(n)] if cycle_types is None else [tuple(c) for c in cycle_types]
    jobs = [(n, ct, q, budget) for ct in cts for q in qs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            values = list(ex.map(_count_one, jobs))
    else:
        values = [_count_one(j) for j in jobs]
    out: dict = {ct: [] for ct in cts}
    for (_, ct, q, _), v in zip(jobs, values):
        out[ct].append((q, v))
    return out


def count_polynomials(n: int, qs=DEFAULT_SAMPLES, *, workers: int = 1) -> dict:
    dim = 2 * (n - 4)
    samples = count_samples(n, qs, workers=workers)
    return {ct: interpolate(s, dim) for ct, s in samples.items()}


def polynomial_table_array(polys: dict) -> np.ndarray:
    """Rows in cycle-type order, coefficients from the top degree down."""
    rows = [list(reversed(polys[ct].coefficients)) for ct in sorted(polys, reverse=True)]
    return np.array(rows, dtype=np.int64)
