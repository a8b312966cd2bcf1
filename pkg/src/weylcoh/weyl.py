"""Picard lattices of del Pezzo surfaces, root systems and Weyl groups.

The Picard lattice of a degree ``d`` del Pezzo surface has basis
``l, e1, ..., er`` (``r = 9 - d``) with form ``diag(1, -1, ..., -1)`` and
canonical class ``k = -3l + e1 + ... + er``.  Roots are the classes of
self-intersection -2 orthogonal to ``k``.

Every Weyl group here is realised as a permutation group on a sorted list
of roots; integer matrices are reconstructed from the images of a basis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import intlinalg as il
from .groups import PermGroup, Subgroup, perm_order


@dataclass(frozen=True)
class MarkedLattice:
    """An integral lattice with Gram matrix and an optional canonical class."""

    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...] | None = None
    labels: tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def gram_array(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)

    def dot(self, u, v) -> int:
        return int(np.asarray(u, dtype=np.int64) @ self.gram_array @ np.asarray(v, dtype=np.int64))

    def vector(self, text: str) -> tuple[int, ...]:
        """Parse classes like ``"2L-E1-E3-E4"`` or ``"E6"`` into coordinates."""
        return parse_class(text, self.rank)


def del_pezzo_lattice(degree: int) -> MarkedLattice:
    if not 1 <= degree <= 9:
        raise ValueError(f"degree must be in 1..9, got {degree}")
    r = 9 - degree
    gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(r + 1)) for i in range(r + 1))
    k = tuple([-3] + [1] * r)
    labels = ("L",) + tuple(f"E{i}" for i in range(1, r + 1))
    return MarkedLattice(gram=gram, canonical=k, labels=labels)


def parse_class(text: str, rank: int) -> tuple[int, ...]:
    v = [0] * rank
    s = text.replace(" ", "").upper()
    if not s:
        raise ValueError("empty class")
    if s[0] not in "+-":
        s = "+" + s
    for sign, coef, name, idx in _tokens(s):
        c = int(coef) if coef else 1
        c = -c if sign == "-" else c
        if name == "L":
            v[0] += c
        elif name == "K":
            v[0] += -3 * c
            for i in range(1, rank):
                v[i] += c
        else:
            i = int(idx)
            if not 1 <= i < rank:
                raise ValueError(f"no exceptional class E{i} in rank {rank}")
            v[i] += c
    return tuple(v)


def _tokens(s):
    import re

    pos = 0
    pat = re.compile(r"([+-])(\d*)(L|K|E)(\d*)")
    while pos < len(s):
        m = pat.match(s, pos)
        if not m or (m.group(3) == "E" and not m.group(4)) or (m.group(3) != "E" and m.group(4)):
            raise ValueError(f"cannot parse class {s!r}")
        yield m.groups()
        pos = m.end()


def format_class(v) -> str:
    parts = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        name = "L" if i == 0 else f"E{i}"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+") + mag + name)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else (s or "0")


def del_pezzo_roots(lattice: MarkedLattice) -> list[tuple[int, ...]]:
    """The explicit root list: e_i-e_j, l-e_i-e_j-e_k, 2l-(six e's), 3l-2e_i-(seven e's)."""
    n = lattice.rank
    r = n - 1
    out = set()

    def vec(l, es):
        v = [0] * n
        v[0] = l
        for i, c in es:
            v[i] += c
        return tuple(v)

    for i, j in itertools.permutations(range(1, n), 2):
        out.add(vec(0, [(i, 1), (j, -1)]))
    for s in itertools.combinations(range(1, n), 3):
        v = vec(1, [(i, -1) for i in s])
        out.add(v)
        out.add(tuple(-x for x in v))
    if r >= 6:
        for s in itertools.combinations(range(1, n), 6):
            v = vec(2, [(i, -1) for i in s])
            out.add(v)
            out.add(tuple(-x for x in v))
    if r >= 8:
        for i in range(1, n):
            v = vec(3, [(j, -2 if j == i else -1) for j in range(1, n)])
            out.add(v)
            out.add(tuple(-x for x in v))
    g = lattice.gram_array
    k = np.array(lattice.canonical)
    for v in out:
        a = np.array(v)
        assert a @ g @ a == -2 and a @ g @ k == 0
    return sorted(out)


def short_vectors(gram, bound: int) -> list[tuple[int, ...]]:
    """All nonzero x with x^T G x <= bound for a positive definite Gram G."""
    g = np.array(gram, dtype=float)
    n = len(g)
    # q_ii (x_i + sum_{j>i} q_ij x_j)^2 decomposition (Fincke-Pohst)
    q = g.copy()
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    out = []
    x = [0] * n
    gi = np.array(gram, dtype=object)
    eps = 1e-9

    def rec(i, remaining):
        if i < 0:
            if any(x):
                v = np.array(x, dtype=object)
                if v @ gi @ v <= bound:
                    out.append(tuple(x))
            return
        c = sum(q[i, j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(remaining, 0) / q[i, i])
        lo = math.ceil(-c - r - eps)
        hi = math.floor(-c + r + eps)
        for xi in range(lo, hi + 1):
            x[i] = xi
            rec(i - 1, remaining - q[i, i] * (xi + c) ** 2)
        x[i] = 0

    rec(n - 1, bound + eps)
    return sorted(out)


_TYPE_TABLE = {
    # (rank, number of roots, number of long roots) -> label
    (1, 2, 0): "A1",
    (2, 6, 0): "A2",
    (3, 12, 0): "A3",
    (4, 20, 0): "A4",
    (4, 24, 0): "D4",
    (5, 30, 0): "A5",
    (5, 40, 0): "D5",
    (6, 72, 0): "E6",
    (7, 126, 0): "E7",
    (8, 240, 0): "E8",
    (4, 48, 24): "F4",
}


class RootSystemError(ValueError):
    pass


@dataclass(eq=False)
class RootSystem:
    """A root system inside a marked lattice.

    ``lattice_basis`` is a basis (rows, ambient coordinates) of the lattice
    ``L`` of classes orthogonal to ``k`` and to the extra classes; roots are
    stored both in ambient and in ``L`` coordinates.  The positive system
    is lexicographic in the ambient coordinates.
    """

    ambient: MarkedLattice
    type_label: str
    roots: np.ndarray
    lattice_basis: np.ndarray
    roots_in_basis: np.ndarray
    positive: np.ndarray
    simple: np.ndarray
    orthogonal_to: tuple[tuple[int, ...], ...] = ()
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {tuple(int(x) for x in r): i for i, r in enumerate(self.roots)}

    @property
    def rank(self) -> int:
        return len(self.lattice_basis)

    def root_index(self, v) -> int:
        return self._index[tuple(int(x) for x in v)]

    def norm(self, i: int) -> int:
        return self.ambient.dot(self.roots[i], self.roots[i])

    @property
    def positive_roots(self) -> np.ndarray:
        return self.roots[self.positive]

    @property
    def lattice_gram(self) -> np.ndarray:
        b = self.lattice_basis
        return b @ self.ambient.gram_array @ b.T

    def cartan_matrix(self) -> np.ndarray:
        s = self.roots[self.simple]
        g = s @ self.ambient.gram_array @ s.T
        return np.array([[2 * g[i, j] // g[j, j] for j in range(len(s))] for i in range(len(s))])

    def reflect(self, i: int, v) -> tuple[int, ...]:
        """r_b(v) = v - 2 (v.b)/(b.b) b."""
        b = self.roots[i]
        vb = self.ambient.dot(v, b)
        bb = self.ambient.dot(b, b)
        c = Fraction(2 * vb, bb)
        out = [Fraction(x) - c * int(y) for x, y in zip(v, b)]
        if any(x.denominator != 1 for x in out):
            raise ValueError("reflection does not preserve the ambient lattice")
        return tuple(int(x) for x in out)

    def reflection_permutation(self, i: int) -> np.ndarray:
        """Permutation of the root list induced by reflecting in root i."""
        b = self.roots[i]
        g = self.ambient.gram_array
        vb = self.roots @ g @ b
        bb = int(b @ g @ b)
        num = 2 * vb
        assert np.all(num % bb == 0)
        imgs = self.roots - np.outer(num // bb, b)
        return np.array([self.root_index(v) for v in imgs], dtype=np.int64)


def orthogonal_lattice(lattice: MarkedLattice, classes) -> np.ndarray:
    g = lattice.gram_array
    rows = [list(np.asarray(c, dtype=np.int64) @ g) for c in classes]
    return np.array(il.kernel(rows, lattice.rank), dtype=np.int64)


def build_root_system(lattice: MarkedLattice, expected_type: str | None = None,
                      orthogonal_to=(), include_long: bool = False) -> RootSystem:
    """Roots of ``lattice`` orthogonal to ``k`` and to every class in ``orthogonal_to``.

    With ``include_long`` the norm -4 vectors ``b`` of ``L`` with ``b.L``
    even are added as long roots (this is how an F4 system sits inside the
    D4 lattice).  Raises ``RootSystemError`` if the result is not of
    ``expected_type``.
    """
    ortho = tuple(tuple(int(x) for x in c) for c in orthogonal_to)
    classes = ([lattice.canonical] if lattice.canonical is not None else []) + list(ortho)
    basis = orthogonal_lattice(lattice, classes) if classes else np.eye(lattice.rank, dtype=np.int64)
    g = lattice.gram_array
    gl = basis @ g @ basis.T
    if np.any(np.linalg.eigvalsh(-gl.astype(float)) <= 0):
        raise RootSystemError("orthogonal lattice is not negative definite")
    coords_short = short_vectors((-gl).tolist(), 4 if include_long else 2)
    roots = []
    for c in coords_short:
        v = np.array(c, dtype=np.int64)
        n = int(v @ gl @ v)
        if n == -2:
            roots.append(v)
        elif n == -4 and include_long:
            if np.all((gl @ v) % 2 == 0):
                roots.append(v)
    if not roots:
        raise RootSystemError("no roots in the orthogonal complement")
    amb = np.array([v @ basis for v in roots], dtype=np.int64)
    order = sorted(range(len(amb)), key=lambda i: tuple(amb[i]))
    amb = amb[order]
    in_basis = np.array([roots[i] for i in order], dtype=np.int64)
    positive = np.array([i for i, v in enumerate(amb) if _lex_positive(v)], dtype=np.int64)
    pos_set = {tuple(amb[i]) for i in positive}
    simple = []
    for i in positive:
        v = amb[i]
        decomposable = any(tuple(v - amb[j]) in pos_set for j in positive if j != i)
        if not decomposable:
            simple.append(i)
    simple = np.array(simple, dtype=np.int64)
    rs = RootSystem(ambient=lattice, type_label="?", roots=amb, lattice_basis=basis,
                    roots_in_basis=in_basis, positive=positive, simple=simple, orthogonal_to=ortho)
    label = _identify(rs)
    if expected_type is not None and label != expected_type:
        raise RootSystemError(f"expected type {expected_type}, found {label}")
    rs.type_label = label
    return rs


def _lex_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _identify(rs: RootSystem) -> str:
    n_long = sum(1 for i in range(len(rs.roots)) if rs.norm(i) == -4)
    rank_span = il.rank(rs.roots.tolist())
    if len(rs.simple) != rank_span:
        return "reducible-or-invalid"
    cm = rs.cartan_matrix()
    # connectivity of the Dynkin diagram
    n = len(cm)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and cm[i, j] != 0:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        return "reducible"
    return _TYPE_TABLE.get((n, len(rs.roots), n_long), f"unknown(rank={n},roots={len(rs.roots)})")


def root_system_of(lattice: MarkedLattice) -> RootSystem:
    """Root system of the whole del Pezzo lattice (checked against the explicit list)."""
    expected = {6: None, 5: "A4", 4: "D5", 3: "E6", 2: "E7", 1: "E8"}.get
    d = int(lattice.dot(lattice.canonical, lattice.canonical))
    rs = build_root_system(lattice, None)
    explicit = del_pezzo_roots(lattice)
    if [tuple(int(x) for x in r) for r in rs.roots] != explicit:
        raise RootSystemError("root enumeration disagrees with the explicit root list")
    if expected(d) is not None and rs.type_label != expected(d):
        raise RootSystemError(f"degree {d} should give {expected(d)}, got {rs.type_label}")
    return rs


class WeylGroup:
    """Reflection group of a root system, acting on the root list.

    ``matrices`` (lazy) holds the action on ``L`` in the lattice basis
    (column convention: ``g x`` for a coordinate column ``x``).
    ``ambient_matrices`` holds the action on the ambient lattice, with the
    orthogonal complement of ``L`` fixed.
    """

    def __init__(self, roots: RootSystem, generators=None):
        self.roots = roots
        if generators is None:
            generators = [roots.reflection_permutation(int(i)) for i in roots.simple]
        self.group = PermGroup(np.array(generators), base=roots.simple)
        self._matrices = None
        self._ambient = None
        self.group.compute_classes(sort_key=self._class_key)

    # basic delegation
    @property
    def order(self) -> int:
        return self.group.order

    @property
    def classes(self):
        return self.group.classes

    @property
    def class_of(self):
        return self.group.class_of

    def _class_key(self, rep, size, order):
        m = self.matrix(rep)
        return (order, size, -int(np.trace(m)), tuple(il.charpoly(m.tolist())), int(self.group._keys(self.group.elements[rep])))

    def _basis_inverse(self):
        s = self.roots.roots_in_basis[self.roots.simple]  # rows in L coords
        st = s.T
        d = int(round(np.linalg.det(st)))
        adj = np.array(il.inverse_rational(st.tolist()), dtype=object) * d
        return np.array(adj.tolist(), dtype=np.int64), d

    def matrix(self, i: int) -> np.ndarray:
        """Integer matrix of element i on L (lattice-basis coordinates)."""
        adj, d = self._basis_inverse()
        img = self.roots.roots_in_basis[self.group.elements[i][self.roots.simple]].T
        m = img @ adj
        assert np.all(m % d == 0)
        return m // d

    @property
    def matrices(self) -> np.ndarray:
        if self._matrices is None:
            adj, d = self._basis_inverse()
            imgs = self.roots.roots_in_basis[self.group.elements[:, self.roots.simple]]  # (N, r, r) rows
            m = np.einsum("nji,jk->nik", imgs, adj)
            assert np.all(m % d == 0)
            self._matrices = m // d
        return self._matrices

    @property
    def ambient_matrices(self) -> np.ndarray:
        """Matrices on the ambient lattice, fixing the complement of L."""
        if self._ambient is None:
            lat = self.roots.ambient
            comp = il.kernel((self.roots.lattice_basis @ lat.gram_array).tolist(), lat.rank)
            simple = self.roots.roots[self.roots.simple]
            b = np.vstack([simple, np.array(comp, dtype=np.int64).reshape(-1, lat.rank)])
            bt = b.T
            inv = il.inverse_rational(bt.tolist())
            d = 1
            for row in inv:
                for x in row:
                    d = d * x.denominator // math.gcd(d, x.denominator)
            adj = np.array([[int(x * d) for x in row] for row in inv], dtype=np.int64)
            imgs = self.roots.roots[self.group.elements[:, self.roots.simple]]  # (N, r, n)
            n_comp = len(comp)
            fixed = np.broadcast_to(np.array(comp, dtype=np.int64).reshape(n_comp, lat.rank),
                                    (self.order, n_comp, lat.rank))
            full = np.concatenate([imgs, fixed], axis=1)  # rows are images of basis vectors
            m = np.einsum("nji,jk->nik", full, adj)
            if np.any(m % d != 0):
                raise ValueError("group does not preserve the ambient lattice")
            self._ambient = m // d
        return self._ambient

    def element_of_ambient_matrix(self, m: np.ndarray) -> int:
        """Index of the element acting on the ambient lattice by m (column convention)."""
        imgs = (np.asarray(m, dtype=np.int64) @ self.roots.roots.T).T
        perm = np.array([self.roots.root_index(v) for v in imgs], dtype=np.int64)
        return int(self.group.index(perm))

    def permutation_element(self, sigma) -> int:
        """Element permuting the exceptional classes: e_i -> e_sigma(i) (1-based dict/list)."""
        n = self.roots.ambient.rank
        m = np.zeros((n, n), dtype=np.int64)
        m[0, 0] = 1
        for i in range(1, n):
            j = sigma[i - 1] if not isinstance(sigma, dict) else sigma.get(i, i)
            m[j, i] = 1
        return self.element_of_ambient_matrix(m)

    def stabilizer(self, vectors, setwise: bool = False) -> Subgroup:
        """Elements fixing each vector (or the set of vectors) in the ambient lattice."""
        vs = np.array(vectors, dtype=np.int64)
        imgs = np.einsum("nij,kj->nki", self.ambient_matrices, vs)  # (N, k, n)
        if setwise:
            key = {tuple(v) for v in vs.tolist()}
            ok = np.array([all(tuple(r) in key for r in img.tolist()) for img in imgs])
        else:
            ok = np.all(imgs == vs[None], axis=(1, 2))
        return Subgroup(self.group, np.nonzero(ok)[0])

    def class_label(self, c: int) -> str:
        cl = self.classes[c]
        return f"C{c}(o={cl.order},|C|={cl.size})"


def symmetric_group_embedding(w: WeylGroup, n: int) -> tuple[Subgroup, list[tuple[int, ...]]]:
    """The copy of S_n permuting e1..en inside w, with its class cycle types.

    Returns the subgroup and, for each subgroup class, the cycle type (a
    partition in decreasing order).
    """
    gens = []
    for i in range(1, n):
        sigma = list(range(1, w.roots.ambient.rank))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        gens.append(w.permutation_element(sigma))
    sub = w.group.generated_subgroup(gens)
    types = []
    for cl in sub.group.classes:
        m = w.ambient_matrices[sub.parent_index[cl.representative]]
        perm = [int(np.nonzero(m[1:, i])[0][0]) for i in range(1, n + 1)]
        types.append(cycle_type(perm))
    return sub, types


def cycle_type(perm) -> tuple[int, ...]:
    seen = set()
    out = []
    for s in range(len(perm)):
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))
