"""Character tables, class functions and Weyl group character labels.

Character tables of enumerated permutation groups are computed by the
Dixon-Schneider method: class multiplication matrices are diagonalised
simultaneously over a prime field and the characters lifted to integers.
Only groups whose characters are rational-valued are supported, which
covers symmetric groups and Weyl groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .groups import PermGroup, Subgroup


class CharacterTableError(RuntimeError):
    pass


# -- modular linear algebra ---------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def choose_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 mod exponent with p > 2 * order."""
    p = (2 * order // exponent + 1) * exponent + 1
    while not _is_prime(p):
        p += exponent
    return p


def _nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (columns) of the right null space of a mod p."""
    a = a.copy() % p
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        a = (a - np.outer(f, a[r])) % p
        piv.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, c in enumerate(piv):
            out[c, k] = (-a[i, f]) % p
    return out


def _column_echelon(b: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Column basis transformed so that rows ``piv`` form the identity."""
    t, piv = _rref_mod(b.T.copy(), p)
    return t.T, piv


def _rref_mod(a, p):
    a = a % p
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        a = (a - np.outer(f, a[r])) % p
        piv.append(c)
        r += 1
    return a[:r], piv


def _charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = np.zeros_like(a)
    ident = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        mk = (a @ mk + coeffs[n - k + 1] * ident) % p
        tr = int(np.trace(a @ mk % p)) % p
        coeffs[n - k] = (-tr * pow(k, -1, p)) % p
    return coeffs


def _roots_mod(coeffs: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        val = (val * xs + c) % p
    return [int(x) for x in np.nonzero(val == 0)[0]]


# -- class functions --------------------------------------------------------

@dataclass(frozen=True)
class ClassFunction:
    """Rational values on the classes of a group (in the group's class order)."""

    group: PermGroup
    values: tuple

    def __add__(self, other):
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return ClassFunction(self.group, tuple(-a for a in self.values))

    def scale(self, c):
        return ClassFunction(self.group, tuple(c * a for a in self.values))

    def __mul__(self, other):
        return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def __getitem__(self, c):
        return self.values[c]


def inner_product(group: PermGroup, f, g) -> Fraction:
    """<f, g> for rational-valued class functions (so no conjugation needed)."""
    fv = f.values if isinstance(f, ClassFunction) else f
    gv = g.values if isinstance(g, ClassFunction) else g
    s = sum(Fraction(int(cl.size)) * Fraction(a) * Fraction(b) for cl, a, b in zip(group.classes, fv, gv))
    return s / group.order


@dataclass(eq=False)
class CharacterTable:
    group: PermGroup
    values: np.ndarray  # (irreducibles, classes) int64
    labels: list[str]

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def character(self, label: str) -> ClassFunction:
        return ClassFunction(self.group, tuple(int(x) for x in self.values[self.index(label)]))

    def degrees(self) -> list[int]:
        return [int(x) for x in self.values[:, self.group.identity_class]] if hasattr(self.group, "identity_class") \
            else [int(x) for x in self.values[:, _identity_class(self.group)]]

    def decompose(self, f) -> list[int]:
        """Multiplicities of each irreducible in f; raises if f is not a virtual character."""
        out = []
        for row in self.values:
            m = inner_product(self.group, f, row)
            if m.denominator != 1:
                raise CharacterTableError(f"class function has non-integral multiplicity {m}")
            out.append(int(m))
        return out

    def compose(self, mults) -> list[int]:
        return [int(x) for x in np.asarray(mults, dtype=np.int64) @ self.values]

    def relabel(self, labels: list[str]) -> None:
        if len(set(labels)) != len(labels):
            raise CharacterTableError("labels are not distinct")
        self.labels = list(labels)

    def reorder(self, labels: list[str]) -> "CharacterTable":
        idx = [self.index(l) for l in labels]
        return CharacterTable(self.group, self.values[idx], list(labels))

    def check_orthogonality(self) -> None:
        n = len(self.labels)
        sizes = np.array([c.size for c in self.group.classes], dtype=object)
        v = self.values.astype(object)
        gram = (v * sizes) @ v.T
        if not np.array_equal(gram, np.eye(n, dtype=object) * self.group.order):
            raise CharacterTableError("row orthogonality failed")
        cent = (v.T @ v)
        expected = np.diag([self.group.order // int(s) for s in sizes])
        if not np.array_equal(cent.astype(object), expected.astype(object)):
            raise CharacterTableError("column orthogonality failed")


def _identity_class(group: PermGroup) -> int:
    return int(group.class_of[group.identity_index])


def class_multiplication_matrix(group: PermGroup, j: int) -> np.ndarray:
    """M_j[k, l] = #{x in C_j : x^-1 z_l in C_k} for representatives z_l."""
    n = len(group.classes)
    xs = group.class_members(j)
    inv = group.elements[group.inverse[xs]]  # (|C_j|, degree)
    out = np.zeros((n, n), dtype=np.int64)
    for l, cl in enumerate(group.classes):
        z = group.elements[cl.representative]
        prod = inv[:, z]  # (x^-1 z)(t) = x^-1[z[t]]
        idx = group.index(prod)
        out[:, l] = np.bincount(group.class_of[idx], minlength=n)
    return out


def character_table(group: PermGroup, *, prime: int | None = None) -> CharacterTable:
    """Irreducible characters by Dixon-Schneider over F_p, lifted and verified."""
    classes = group.classes
    n = len(classes)
    one = _identity_class(group)
    if one != 0:
        raise CharacterTableError("identity must be the first class")
    p = prime or choose_prime(group.order, group.exponent())
    spaces = [np.eye(n, dtype=np.int64)]
    done = []
    cache = {}
    for j in range(1, n):
        if not spaces:
            break
        mj = cache.setdefault(j, class_multiplication_matrix(group, j)) % p
        nxt = []
        for b in spaces:
            b, piv = _column_echelon(b, p)
            a = (mj @ b % p)[piv, :]
            evs = _roots_mod(_charpoly_mod(a, p), p)
            total = 0
            for lam in evs:
                ns = _nullspace_mod((a - lam * np.eye(len(a), dtype=np.int64)) % p, p)
                sub = b @ ns % p
                total += sub.shape[1]
                (done if sub.shape[1] == 1 else nxt).append(sub)
            if total != b.shape[1]:
                raise CharacterTableError("class matrix is not split over F_p")
        spaces = nxt
    if spaces:
        raise CharacterTableError("eigenspaces did not separate")
    sizes = [c.size for c in classes]
    invc = group.inverse_classes()
    rows = []
    for v in done:
        w = v[:, 0] % p
        w = w * pow(int(w[one]), -1, p) % p
        s = sum(int(w[l]) * int(w[invc[l]]) * pow(sizes[l], -1, p) for l in range(n)) % p
        d2 = group.order * pow(s, -1, p) % p
        d = isqrt(d2)
        if d * d != d2 or group.order % d:
            raise CharacterTableError("degree lift failed")
        row = []
        for l in range(n):
            x = int(w[l]) * d * pow(sizes[l], -1, p) % p
            row.append(x - p if x > p // 2 else x)
        rows.append(row)
    vals = np.array(rows, dtype=np.int64)
    order = sorted(range(len(rows)), key=lambda i: (rows[i][0], [-x for x in rows[i]]))
    vals = vals[order]
    table = CharacterTable(group, vals, [f"chi{i}" for i in range(len(rows))])
    table.check_orthogonality()
    return table


# -- symmetric groups ---------------------------------------------------------

def partitions(n: int, maxpart: int | None = None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def mn_character(shape, cycle_type) -> int:
    """Murnaghan-Nakayama rule on beta-sets."""
    shape = tuple(x for x in shape if x)
    return _mn(_beta(shape), tuple(sorted(cycle_type, reverse=True)))


def _beta(shape):
    L = len(shape)
    return frozenset(shape[i] + (L - 1 - i) for i in range(L))


_mn_cache: dict = {}


def _mn(beta: frozenset, mu: tuple) -> int:
    if not mu:
        return 1
    key = (beta, mu)
    if key in _mn_cache:
        return _mn_cache[key]
    r = mu[0]
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beta:
            sign = (-1) ** sum(1 for c in beta if b - r < c < b)
            total += sign * _mn(beta - {b} | {b - r}, mu[1:])
    _mn_cache[key] = total
    return total


def partition_label(shape) -> str:
    """'s_{3,2,1}', 's_{2^2,1^2}', 's_{6}'."""
    parts = []
    i = 0
    shape = list(shape)
    while i < len(shape):
        j = i
        while j < len(shape) and shape[j] == shape[i]:
            j += 1
        m = j - i
        parts.append(str(shape[i]) if m == 1 else f"{shape[i]}^{m}")
        i = j
    return "s_{" + ",".join(parts) + "}"


def symmetric_table(group: PermGroup, cycle_types, n: int) -> CharacterTable:
    """Character table of a copy of S_n, using the given class cycle types."""
    shapes = list(partitions(n))
    vals = np.array([[mn_character(s, ct) for ct in cycle_types] for s in shapes], dtype=np.int64)
    t = CharacterTable(group, vals, [partition_label(s) for s in shapes])
    t.check_orthogonality()
    return t


# -- operations on class functions ---------------------------------------------

def power_maps(group: PermGroup, upto: int) -> dict[int, np.ndarray]:
    return {k: group.power_map(k) for k in range(1, upto + 1)}


def sym_power(group: PermGroup, chi, k: int, pmaps=None) -> ClassFunction:
    """Character of Sym^k via Newton's identity k h_k = sum_i p_i h_{k-i}."""
    vals = chi.values if isinstance(chi, ClassFunction) else tuple(chi)
    pmaps = pmaps or power_maps(group, k)
    n = len(vals)
    psums = {i: [Fraction(vals[pmaps[i][c]]) for c in range(n)] for i in range(1, k + 1)}
    h = [[Fraction(1)] * n]
    for m in range(1, k + 1):
        hm = [sum(psums[i][c] * h[m - i][c] for i in range(1, m + 1)) / m for c in range(n)]
        h.append(hm)
    out = []
    for x in h[k]:
        if x.denominator != 1:
            raise CharacterTableError("symmetric power is not integral")
        out.append(int(x))
    return ClassFunction(group, tuple(out))


def reflection_character(weyl) -> ClassFunction:
    """Trace of each class on the lattice L."""
    g = weyl.group
    return ClassFunction(g, tuple(int(np.trace(weyl.matrix(c.representative))) for c in g.classes))


def fake_degree_label(weyl, table: CharacterTable, max_k: int = 40, primes: bool = False) -> list[str]:
    """Label each irreducible phi_{d}^{b} with b the least k with <chi, Sym^k V> > 0.

    Equal labels raise unless ``primes`` is set, in which case they get
    ', '', ... in decreasing order of their value rows.
    """
    g = weyl.group
    refl = reflection_character(weyl)
    pm = power_maps(g, max_k)
    labels = [None] * len(table)
    for k in range(0, max_k + 1):
        sk = sym_power(g, refl, k, pm) if k else ClassFunction(g, tuple([1] * len(g.classes)))
        for i, row in enumerate(table.values):
            if labels[i] is None and inner_product(g, sk, row) > 0:
                labels[i] = f"phi_{{{int(row[0])}}}^{{{k}}}"
        if all(labels):
            break
    if not all(labels):
        raise CharacterTableError("some irreducible does not occur in Sym^k for k <= max_k")
    if len(set(labels)) != len(labels):
        if not primes:
            raise CharacterTableError("labels are not injective")
        groups: dict[str, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        for lab, idx in groups.items():
            if len(idx) > 1:
                idx.sort(key=lambda i: tuple(int(x) for x in table.values[i]), reverse=True)
                for k, i in enumerate(idx):
                    labels[i] = lab + "'" * (k + 1)
    return labels


def weyl_character_table(weyl, *, primes: bool = False) -> CharacterTable:
    t = character_table(weyl.group)
    t.relabel(fake_degree_label(weyl, t, primes=primes))
    return t


def restrict(sub: Subgroup, f) -> ClassFunction:
    vals = f.values if isinstance(f, ClassFunction) else f
    fus = sub.fusion()
    return ClassFunction(sub.group, tuple(vals[c] for c in fus))


def induce(sub: Subgroup, f) -> ClassFunction:
    """Induced class function: |C_G(g)|/|H| * sum over fusing H-classes of |c| f(c)."""
    vals = f.values if isinstance(f, ClassFunction) else f
    g = sub.parent
    fus = sub.fusion()
    acc = [Fraction(0)] * len(g.classes)
    for c, cl in enumerate(sub.group.classes):
        acc[fus[c]] += Fraction(cl.size) * Fraction(vals[c])
    out = []
    for c, a in enumerate(acc):
        out.append(a * g.centralizer_order(c) / sub.order)
    return ClassFunction(g, tuple(out))


def label_sort_key(label: str):
    """Sort key for phi labels: degree then b-value."""
    import re
    m = re.match(r"phi_\{(\d+)\}\^\{(\d+)\}", label)
    return (int(m.group(1)), int(m.group(2))) if m else (0, 0)
