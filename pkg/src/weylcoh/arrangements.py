"""Hyperplane and toric arrangements of root systems.

A toric layer is a connected component of an intersection of hypertori
``ker(chi -> chi(a))`` in ``T = Hom(L, C*)``.  It is stored as a pair
``(M, psi)``: ``M`` is the saturated sublattice spanned by the roots
vanishing on the layer (its HNF basis) and ``psi`` is the torsion character
on ``M`` describing the component, given by its values in ``Q/Z`` on the
basis rows.  For hyperplane arrangements ``psi`` is always trivial.

Group elements act through integer matrices on ``L`` (column convention).
Cohomology is recorded with compact supports: a polynomial
``sum_i Tr(g, H^i_c) t^i`` per element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import intlinalg as il


class ArrangementError(RuntimeError):
    pass


Poly = tuple  # integer coefficients, t^0 upward

# Torsion characters take values in (1/N)Z/Z; every torsion order met by the
# root systems here divides N, and exactness is asserted where it matters.
LABEL_DENOMINATOR = 720720


def poly_trim(p) -> tuple:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a, c):
    return poly_trim([c * x for x in a])


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


@dataclass(frozen=True)
class Layer:
    basis: tuple[tuple[int, ...], ...]  # HNF rows of M (codim = len)
    label: tuple[int, ...]  # psi on basis rows, in units of 1/LABEL_DENOMINATOR
    mask: int  # bit a set iff hypertorus a contains the layer

    @property
    def codim(self) -> int:
        return len(self.basis)

    @property
    def key(self):
        return (self.basis, self.label)

    @property
    def is_flat(self) -> bool:
        return all(x == 0 for x in self.label)


class ArrangementPoset:
    """Intersection poset of the arrangement of hypertori (or hyperplanes)
    ``{a = 1}`` for the given roots, built breadth-first by codimension.

    ``roots`` are integer row vectors in coordinates of ``L``; only one of
    each pair ``+-a`` should be passed.
    """

    def __init__(self, roots, rank: int, kind: str = "toric", *, _records=None):
        if kind not in ("toric", "linear"):
            raise ValueError("kind must be 'toric' or 'linear'")
        self.kind = kind
        self.rank = rank
        self.roots = [tuple(int(x) for x in r) for r in roots]
        self._root_arr = np.array(self.roots, dtype=np.int64).reshape(-1, rank)
        self._span_cache: dict = {}
        self._ext_cache: dict = {}
        self.layers: list[Layer] = []
        self.parents: list[list[int]] = []
        if _records is None:
            self._build()
        else:
            self.layers, self.parents = _records
        self._order_matrix = None
        self._mobius = None

    @classmethod
    def from_records(cls, roots, rank: int, kind: str, layers, parents) -> "ArrangementPoset":
        """Rebuild a poset from stored layers; parents must precede children."""
        layers = [Layer(tuple(tuple(r) for r in l.basis), tuple(l.label), int(l.mask)) for l in layers]
        parents = [list(p) for p in parents]
        for i, ps in enumerate(parents):
            if any(p >= i for p in ps) or (i > 0 and not ps):
                raise ArrangementError("stored poset is not in construction order")
        return cls(roots, rank, kind, _records=(layers, parents))

    def distinct_masks(self) -> int:
        """Number of distinct sets of arrangement members containing a layer."""
        return len({l.mask for l in self.layers})

    # -- construction ------------------------------------------------------

    def _roots_in(self, basis):
        """(mask of roots lying in M, dict root -> coordinates in basis)."""
        if basis in self._span_cache:
            return self._span_cache[basis]
        mask = 0
        coords = {}
        h = [list(r) for r in basis]
        for a, r in enumerate(self.roots):
            c = il.in_row_space(h, r) if h else (None if any(r) else [])
            if c is not None:
                mask |= 1 << a
                coords[a] = tuple(c)
        self._span_cache[basis] = (mask, coords)
        return mask, coords

    def _extension_data(self, basis, a):
        key = (basis, a)
        if key in self._ext_cache:
            return self._ext_cache[key]
        rows = [list(r) for r in basis] + [list(self.roots[a])]
        new = tuple(tuple(r) for r in il.saturate(rows))
        if self.kind == "linear":
            data = (new, None)
        else:
            h = [list(r) for r in new]
            g = [il.in_row_space(h, r) for r in rows]  # old generators in the new basis
            n = len(new)
            # Values x of the extension on the new basis solve G x = phi (mod 1).
            # With U G V = D: x = V D^-1 (U phi + w), w_i in [0, d_i).
            u, d, v, _, _ = il.smith_full(g)
            divs = [d[i][i] for i in range(n)]
            ws = [[]]
            for dv in divs:
                ws = [w + [k] for w in ws for k in range(dv)]
            data = (new, (u, v, divs, ws))
        self._ext_cache[key] = data
        return data

    def _extensions(self, data, label):
        new, ext = data
        if ext is None:
            return [(0,) * len(new)]
        u, v, divs, ws = ext
        n = len(new)
        N = LABEL_DENOMINATOR
        phi = list(label) + [0]
        uphi = [sum(u[i][j] * phi[j] for j in range(n)) for i in range(n)]
        out = []
        for w in ws:
            y = []
            for i in range(n):
                num = uphi[i] + w[i] * N
                if num % divs[i]:
                    raise ArrangementError("torsion order does not divide the label denominator")
                y.append(num // divs[i])
            out.append(tuple(sum(v[i][j] * y[j] for j in range(n)) % N for i in range(n)))
        return out

    def _make_layer(self, basis, label) -> Layer:
        mask = 0
        _, coords = self._roots_in(basis)
        for a, c in coords.items():
            if sum(x * y for x, y in zip(c, label)) % LABEL_DENOMINATOR == 0:
                mask |= 1 << a
        return Layer(basis, label, mask)

    def _build(self):
        top = Layer((), (), 0)
        self.layers = [top]
        self.parents = [[]]
        index = {top.key: 0}
        level = [0]
        nroots = len(self.roots)
        while level:
            nxt = []
            for y in level:
                ly = self.layers[y]
                span_mask, _ = self._roots_in(ly.basis)
                for a in range(nroots):
                    if (span_mask >> a) & 1:
                        continue  # either contained already, or empty intersection
                    data = self._extension_data(ly.basis, a)
                    new = data[0]
                    for lab in self._extensions(data, ly.label):
                        key = (new, lab)
                        idx = index.get(key)
                        if idx is None:
                            idx = len(self.layers)
                            index[key] = idx
                            self.layers.append(self._make_layer(new, lab))
                            self.parents.append([])
                            nxt.append(idx)
                        if y not in self.parents[idx]:
                            self.parents[idx].append(y)
            level = nxt

    # -- order and Mobius --------------------------------------------------

    def __len__(self):
        return len(self.layers)

    @property
    def order_matrix(self) -> np.ndarray:
        """Boolean matrix D with D[z, y] true iff y <= z (layer z inside y)."""
        if self._order_matrix is None:
            n = len(self.layers)
            d = np.zeros((n, n), dtype=bool)
            for z in range(n):  # construction order is a linear extension
                d[z, z] = True
                for p in self.parents[z]:
                    d[z] |= d[p]
            self._order_matrix = d
        return self._order_matrix

    def mobius(self, subset=None) -> np.ndarray:
        """Mobius function from the top element, on the full poset or on a subset
        (indices, containing 0) with the induced order."""
        if subset is None:
            if self._mobius is None:
                self._mobius = _mobius(self.order_matrix, self.codims())
            return self._mobius
        subset = np.asarray(subset, dtype=np.int64)
        d = self.order_matrix[np.ix_(subset, subset)]
        return _mobius(d, self.codims()[subset])

    def codims(self) -> np.ndarray:
        return np.array([l.codim for l in self.layers], dtype=np.int64)

    def counts_by_dimension(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for l in self.layers:
            out[self.rank - l.codim] = out.get(self.rank - l.codim, 0) + 1
        return dict(sorted(out.items(), reverse=True))

    # -- group action ------------------------------------------------------

    def root_permutation(self, g: np.ndarray) -> np.ndarray:
        """For each root a, the index of +-g(a) in the root list."""
        imgs = (np.asarray(g, dtype=np.int64) @ self._root_arr.T).T
        lookup = {r: i for i, r in enumerate(self.roots)}
        out = np.empty(len(self.roots), dtype=np.int64)
        for a, v in enumerate(imgs):
            t = tuple(int(x) for x in v)
            if t in lookup:
                out[a] = lookup[t]
            else:
                out[a] = lookup[tuple(-x for x in t)]
        return out

    def fixed_layers(self, g: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """Indices of layers fixed by g, and g's matrix on each M (row basis)."""
        g = np.asarray(g, dtype=np.int64)
        n = self.rank
        perm = self.root_permutation(g)
        fixed = []
        mats = []
        is_id = np.array_equal(g, np.eye(n, dtype=np.int64))
        is_neg = np.array_equal(g, -np.eye(n, dtype=np.int64))
        for i, l in enumerate(self.layers):
            m = l.mask
            img = 0
            a = 0
            while m:
                if m & 1:
                    img |= 1 << int(perm[a])
                m >>= 1
                a += 1
            if img != l.mask:
                continue
            k = l.codim
            if k == 0:
                c = np.zeros((0, 0), dtype=np.int64)
            elif is_id:
                c = np.eye(k, dtype=np.int64)
            elif is_neg:
                c = -np.eye(k, dtype=np.int64)
            else:
                c = _restricted_matrix(l.basis, g)
            if self.kind == "toric" and not is_id:
                lab = l.label
                ok = all((sum(int(c[j, i2]) * lab[j] for j in range(k)) - lab[i2]) % LABEL_DENOMINATOR == 0
                         for i2 in range(k))
                if not ok:
                    continue
            fixed.append(i)
            mats.append(c)
        return np.array(fixed, dtype=np.int64), mats

    def equivariant_poincare(self, g) -> Poly:
        """sum over fixed layers Z of mu(Z) (-t)^codim P(Z, t)(g), with the Mobius
        function of the fixed subposet."""
        g = np.asarray(g, dtype=np.int64)
        fixed, mats = self.fixed_layers(g)
        mu = self.mobius(fixed)
        cp_l = tuple(il.charpoly(g.tolist()))
        total: tuple = (0,)
        for idx, c, m in zip(fixed, mats, mu):
            if m == 0:
                continue
            layer = self.layers[idx]
            k = layer.codim
            if self.kind == "linear":
                pz = (0,) * (2 * (self.rank - k)) + (1,)
            else:
                pz = _layer_poly(cp_l, tuple(il.charpoly(c.tolist())) if k else (1,))
            sign = (-1) ** k
            term = (0,) * k + tuple(sign * int(m) * x for x in pz)
            total = poly_add(total, term)
        return total


def _restricted_matrix(basis, g) -> np.ndarray:
    """Matrix C with g(b_j) = sum_i C[i, j] b_i for the basis rows b_j (column convention)."""
    b = np.array(basis, dtype=np.int64)
    imgs = (g @ b.T).T  # rows g(b_j)
    h = [list(r) for r in basis]
    cols = []
    for v in imgs:
        c = il.in_row_space(h, [int(x) for x in v])
        if c is None:
            raise ArrangementError("element does not stabilize the layer lattice")
        cols.append(c)
    return np.array(cols, dtype=np.int64).T


@lru_cache(maxsize=None)
def _layer_poly(cp_l: tuple, cp_m: tuple) -> Poly:
    """sum_j Tr(Lambda^j (L/M)) t^(2d-j) from the characteristic polynomials."""
    q = il.poly_divide_exact(list(cp_l), list(cp_m))
    d = len(q) - 1
    # det(x - A) = sum_j (-1)^j e_j x^(d-j)
    e = [(-1) ** j * q[d - j] for j in range(d + 1)]
    out = [0] * (2 * d + 1)
    for j in range(d + 1):
        out[2 * d - j] = e[j]
    return poly_trim(out)


def layer_poincare(layer: Layer, g, kind: str, rank: int) -> Poly:
    if kind == "linear":
        return (0,) * (2 * (rank - layer.codim)) + (1,)
    g = np.asarray(g, dtype=np.int64)
    c = _restricted_matrix(layer.basis, g) if layer.codim else np.zeros((0, 0), dtype=np.int64)
    return _layer_poly(tuple(il.charpoly(g.tolist())), tuple(il.charpoly(c.tolist())) if layer.codim else (1,))


def _mobius(d: np.ndarray, codims: np.ndarray) -> np.ndarray:
    """Solve sum_{y <= z} mu(y) = [z minimal] by forward substitution in codim order."""
    n = len(d)
    order = np.argsort(codims, kind="stable")
    dd = d[np.ix_(order, order)].astype(np.int64)
    cod = codims[order]
    mu = np.zeros(n, dtype=np.int64)
    start = 0
    while start < n:
        end = start
        while end < n and cod[end] == cod[start]:
            end += 1
        if start == 0:
            if end != 1:
                raise ArrangementError("poset must have a unique minimal element")
            mu[0] = 1
        else:
            mu[start:end] = -(dd[start:end, :start] @ mu[:start])
        start = end
    out = np.empty(n, dtype=np.int64)
    out[order] = mu
    return out


# -- operations on equivariant polynomials ---------------------------------

def projectivize(p: Poly) -> Poly:
    """Exact division by t + t^2 (quotient by the scaling action)."""
    q = il.poly_divide_exact(list(p), [0, 1, 1])
    return poly_trim(q)


def ordinary_from_compact(p: Poly, dim: int) -> list[int]:
    """Ordinary Betti traces: H^k = coefficient of t^(2 dim - k)."""
    p = list(p) + [0] * (2 * dim + 1 - len(p))
    return [p[2 * dim - k] for k in range(dim + 1)]


def quotient_average(polys) -> Poly:
    """(1/|G|) sum of the given polynomials, asserting integrality."""
    polys = list(polys)
    n = max(len(p) for p in polys)
    acc = [sum(p[i] if i < len(p) else 0 for p in polys) for i in range(n)]
    if any(x % len(polys) for x in acc):
        raise ArrangementError("averaged coefficients are not integral")
    return poly_trim([x // len(polys) for x in acc])


def blowup_combine(toric: list, proj: list) -> list:
    """H^i(union) = H^i(toric) - H^(i-1)(projective), degree by degree.

    Inputs are lists indexed by ordinary degree of anything supporting
    subtraction (multiplicity vectors or class functions).
    """
    n = max(len(toric), len(proj) + 1)
    out = []
    for i in range(n):
        a = toric[i] if i < len(toric) else None
        b = proj[i - 1] if 0 <= i - 1 < len(proj) else None
        if a is None:
            a = np.zeros_like(np.asarray(b))
        if b is None:
            out.append(np.asarray(a))
        else:
            out.append(np.asarray(a) - np.asarray(b))
    return out


def substitute_count(p: Poly, dim: int, q: int) -> Fraction:
    """|X^{Fg}| = sum_k (-1)^k Tr(g, H^k_c) q^(k - dim)."""
    return sum(((-1) ** k) * c * Fraction(q) ** (k - dim) for k, c in enumerate(p))


# -- independent finite-field oracle -----------------------------------------

def oracle_count(roots, rank: int, kind: str, q: int, g=None) -> int:
    """Number of points of the complement fixed by F o g over F_q.

    Toric: characters chi of L with chi^q o g^-1 = chi are the characters of
    L / (q g^-1 - 1) L; one is counted when chi(a) != 1 for every root.
    Linear: brute force over the F_q-structure given by the twisted
    Frobenius, realised inside F_{q^m} with m the order of g.
    """
    g = np.eye(rank, dtype=np.int64) if g is None else np.asarray(g, dtype=np.int64)
    ginv = np.array(il.inverse_unimodular(g.tolist()), dtype=np.int64)
    if kind == "toric":
        n = q * ginv - np.eye(rank, dtype=np.int64)
        u, d, _ = il.smith(n.tolist())
        divs = [d[i][i] for i in range(rank)]
        e = 1
        for x in divs:
            e = e * x // np.gcd(e, x)
        ua = [np.array(u, dtype=np.int64) @ np.asarray(r, dtype=np.int64) for r in roots]
        # chi(v) = omega^(sum_i k_i (e/d_i) (U v)_i)
        grids = np.stack(np.meshgrid(*[np.arange(x) for x in divs], indexing="ij"), -1).reshape(-1, rank)
        ok = np.ones(len(grids), dtype=bool)
        scale = np.array([e // x for x in divs], dtype=np.int64)
        for v in ua:
            ok &= (grids @ (scale * v)) % e != 0
        return int(ok.sum())
    from .finitegeom import FiniteField

    m = 1
    p = g.copy()
    while not np.array_equal(p, np.eye(rank, dtype=np.int64)):
        p = p @ g
        m += 1
    return _linear_twisted_count(roots, rank, q, ginv, m, FiniteField)


def _subfield_isomorphism(big, fq, fqf, q) -> list[int]:
    """Images in ``fqf`` of the elements ``fq`` (0, then powers of a generator of
    the order-q subfield of ``big``) under a field isomorphism.

    Matching generator powers is multiplicative; the exponent is chosen so that
    the map is also additive.
    """
    for k in range(1, q):
        if gcd(k, q - 1) != 1:
            continue
        img = [fqf.zero] + [fqf.power_of_generator(k * s % (q - 1)) for s in range(q - 1)]
        pos = {x: i for i, x in enumerate(fq)}
        if all(img[pos[big.add(fq[i], fq[j])]] == fqf.add(img[i], img[j]) for i in range(q) for j in range(q)):
            return img
    raise ArrangementError("no additive identification of the subfield")


def _linear_twisted_count(roots, rank, q, ginv, m, field_cls) -> int:
    big = field_cls.of_order(q ** m)
    small_log_step = (big.size - 1) // (q - 1)
    # F_q-basis of F_{q^m}: powers of a primitive element
    theta = [big.power_of_generator(i) for i in range(m)]
    fq = [big.zero] + [big.power_of_generator(small_log_step * s) for s in range(q - 1)]
    # all elements with their F_q coordinates
    coords = {}
    import itertools

    for cs in itertools.product(range(q), repeat=m):
        x = big.zero
        for c, t in zip(cs, theta):
            x = big.add(x, big.mul(fq[c], t))
        coords[x] = cs
    if len(coords) != big.size:
        raise ArrangementError("powers of the generator are not an F_q-basis")
    # Phi(x)_j = sum_k h_kj x_k^q with h = g^-1; it is F_q-linear on F_{q^m}^rank
    h = ginv

    def phi(x):
        return [big.int_combination([(int(h[k, j]), big.frob(x[k], q)) for k in range(rank)]) for j in range(rank)]

    dim = rank * m
    basis = []
    for j in range(rank):
        for i in range(m):
            v = [big.zero] * rank
            v[j] = theta[i]
            basis.append(v)

    def to_vec(x):
        return [c for xj in x for c in coords[xj]]

    # matrix of Phi - 1 over F_q, columns = images of basis vectors
    fqf = field_cls.of_order(q)
    small_elems = _subfield_isomorphism(big, fq, fqf, q)
    cols = []
    for v in basis:
        w = phi(v)
        diff = [big.sub(a, b) for a, b in zip(w, v)]
        cols.append([small_elems[c] for c in to_vec(diff)])
    mat = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    kern = fqf.nullspace(mat)
    if len(kern) != rank:
        raise ArrangementError("twisted Frobenius fixed space has the wrong dimension")
    small_to_big = {small_elems[i]: fq[i] for i in range(q)}
    vecs = []
    for kv in kern:
        x = []
        for j in range(rank):
            acc = big.zero
            for i in range(m):
                acc = big.add(acc, big.mul(small_to_big[kv[j * m + i]], theta[i]))
            x.append(acc)
        vecs.append(x)
    count = 0
    for cs in itertools.product(range(q), repeat=rank):
        x = [big.zero] * rank
        for c, v in zip(cs, vecs):
            if c:
                x = [big.add(a, big.mul(fq[c], b)) for a, b in zip(x, v)]
        if all(big.int_combination([(int(r[j]), x[j]) for j in range(rank)]) != big.zero for r in roots):
            count += 1
    return count
