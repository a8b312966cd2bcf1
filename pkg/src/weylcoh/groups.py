"""Fully enumerated permutation groups with conjugacy classes.

Elements are stored as rows of an ``(order, degree)`` integer array.  The
product ``g h`` acts as ``x -> g[h[x]]``.  Lookup of an arbitrary permutation
uses the images of a base, packed into a single int64 key.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def perm_order(p: np.ndarray) -> int:
    seen = np.zeros(len(p), dtype=bool)
    out = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        n = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            n += 1
        out = _lcm(out, n)
    return out


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: int  # element index in the owning group
    size: int
    order: int


class PermGroup:
    """A permutation group together with the full list of its elements."""

    def __init__(self, generators, *, base=None, max_order: int = 2_000_000):
        gens = np.atleast_2d(np.asarray(generators, dtype=np.int64))
        self.degree = gens.shape[1]
        self.generators = gens
        self.elements = self._enumerate(gens, max_order)
        self.order = len(self.elements)
        self.base = self._choose_base(base)
        self._radix = np.int64(self.degree) ** np.arange(len(self.base), dtype=np.int64)
        keys = self._keys(self.elements)
        self._sort = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._sort]
        if np.any(np.diff(self._sorted_keys) == 0):
            raise ValueError("base does not separate group elements")
        self.identity_index = int(self.index(np.arange(self.degree))[()])
        self._classes = None
        self._class_of = None
        self._inverse = None

    @staticmethod
    def _enumerate(gens, max_order):
        ident = np.arange(gens.shape[1], dtype=np.int64)
        seen = {ident.tobytes()}
        out = [ident]
        frontier = ident[None, :]
        while len(frontier):
            new = []
            for s in gens:
                prod = frontier[:, s]
                for row in prod:
                    b = row.tobytes()
                    if b not in seen:
                        seen.add(b)
                        new.append(row)
            if len(seen) > max_order:
                raise ValueError("group is larger than max_order")
            out.extend(new)
            frontier = np.array(new, dtype=np.int64) if new else np.empty((0, gens.shape[1]), dtype=np.int64)
        return np.array(out, dtype=np.int64)

    def _choose_base(self, base):
        if base is not None:
            return np.asarray(base, dtype=np.int64)
        maxlen = int(62 / np.log2(max(self.degree, 2)))
        chosen: list[int] = []
        cur = 1
        candidates = list(range(self.degree))
        while cur < self.order:
            best, best_n = None, cur
            for p in candidates:
                n = len(np.unique(self.elements[:, chosen + [p]], axis=0))
                if n > best_n:
                    best, best_n = p, n
            if best is None:
                raise ValueError("could not find a base")
            chosen.append(best)
            candidates.remove(best)
            cur = best_n
            if len(chosen) > maxlen:
                raise ValueError("base too long for int64 keys")
        return np.array(chosen, dtype=np.int64)

    def _keys(self, perms):
        return (np.asarray(perms)[..., self.base] * self._radix).sum(axis=-1)

    def index(self, perms) -> np.ndarray:
        """Element indices of the given permutations (raises if absent)."""
        perms = np.asarray(perms, dtype=np.int64)
        keys = self._keys(perms)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        idx = self._sort[pos]
        ok = np.all(self.elements[idx] == perms, axis=-1)
        if not np.all(ok):
            raise KeyError("permutation is not in the group")
        return idx

    def contains(self, perm) -> bool:
        try:
            self.index(perm)
            return True
        except KeyError:
            return False

    def mul(self, i: int, j: int) -> int:
        return int(self.index(self.elements[i][self.elements[j]]))

    @property
    def inverse(self) -> np.ndarray:
        if self._inverse is None:
            inv = np.empty_like(self.elements)
            rows = np.arange(self.order)[:, None]
            inv[rows, self.elements] = np.arange(self.degree)[None, :]
            self._inverse = self.index(inv)
        return self._inverse

    def power(self, i: int, k: int) -> int:
        p = np.arange(self.degree)
        e = self.elements[i]
        for _ in range(k % perm_order(e)):
            p = e[p]
        return int(self.index(p))

    def conjugation_action(self, s: np.ndarray) -> np.ndarray:
        """Index permutation g -> s^-1 g s for a permutation s normalizing the group."""
        sinv = np.argsort(s)
        return self.index(sinv[self.elements[:, s]])

    # -- classes ---------------------------------------------------------

    def compute_classes(self, sort_key=None):
        """Classes as connected components of conjugation by generators.

        ``sort_key(rep_index, size, order)`` fixes the class order; the
        default sorts by element order, then class size, then smallest key.
        """
        rows, cols = [], []
        for s in self.generators:
            img = self.conjugation_action(s)
            rows.append(np.arange(self.order))
            cols.append(img)
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(self.order, self.order))
        ncomp, labels = connected_components(graph, directed=True, connection="weak")
        sizes = np.bincount(labels, minlength=ncomp)
        keys = self._keys(self.elements)
        reps = []
        for comp in range(ncomp):
            members = np.nonzero(labels == comp)[0]
            rep = int(members[np.argmin(keys[members])])
            reps.append(rep)
        orders = [perm_order(self.elements[r]) for r in reps]
        if sort_key is None:
            sort_key = lambda rep, size, order: (order, size, int(keys[rep]))
        perm = sorted(range(ncomp), key=lambda t: sort_key(reps[t], int(sizes[t]), orders[t]))
        relabel = np.empty(ncomp, dtype=np.int64)
        relabel[perm] = np.arange(ncomp)
        self._class_of = relabel[labels]
        self._classes = [
            ConjugacyClass(index=i, representative=reps[t], size=int(sizes[t]), order=orders[t])
            for i, t in enumerate(perm)
        ]
        assert sum(c.size for c in self._classes) == self.order
        return self._classes

    @property
    def classes(self) -> list[ConjugacyClass]:
        if self._classes is None:
            self.compute_classes()
        return self._classes

    @property
    def class_of(self) -> np.ndarray:
        if self._class_of is None:
            self.compute_classes()
        return self._class_of

    def class_members(self, c: int) -> np.ndarray:
        return np.nonzero(self.class_of == c)[0]

    def centralizer_order(self, c: int) -> int:
        return self.order // self.classes[c].size

    def power_map(self, k: int) -> np.ndarray:
        """Class index of g^k for g in each class."""
        return np.array([self.class_of[self.power(cl.representative, k)] for cl in self.classes])

    def inverse_classes(self) -> np.ndarray:
        return np.array([self.class_of[self.inverse[cl.representative]] for cl in self.classes])

    def exponent(self) -> int:
        e = 1
        for cl in self.classes:
            e = _lcm(e, cl.order)
        return e

    def subgroup(self, indices) -> "Subgroup":
        return Subgroup(self, indices)

    def generated_subgroup(self, gen_indices) -> "Subgroup":
        sub = PermGroup(self.elements[list(gen_indices)], base=self.base)
        return Subgroup(self, self.index(sub.elements), _group=sub)


class Subgroup:
    """A subgroup given by element indices of a parent permutation group."""

    def __init__(self, parent: PermGroup, indices, _group: PermGroup | None = None):
        self.parent = parent
        indices = np.asarray(indices, dtype=np.int64)
        if _group is None:
            gens = _generators_for(parent, indices)
            _group = PermGroup(parent.elements[gens], base=parent.base)
            if _group.order != len(np.unique(indices)):
                raise ValueError("indices do not form a subgroup")
        self.group = _group
        # parent index of each subgroup element
        self.parent_index = parent.index(_group.elements)

    @property
    def order(self) -> int:
        return self.group.order

    def fusion(self) -> np.ndarray:
        """Parent class index of each subgroup class."""
        return np.array([self.parent.class_of[self.parent_index[c.representative]] for c in self.group.classes])


def _generators_for(parent: PermGroup, indices) -> list[int]:
    members = set(int(i) for i in indices)
    rng = np.random.default_rng(12345)
    order = rng.permutation(sorted(members))
    gens: list[int] = []
    span = {parent.identity_index}
    for g in order:
        g = int(g)
        if g in span:
            continue
        gens.append(g)
        span = set(int(i) for i in parent.index(PermGroup(parent.elements[gens], base=parent.base).elements))
        if len(span) == len(members):
            break
    if not span <= members:
        raise ValueError("indices do not form a subgroup")
    return gens if gens else [parent.identity_index]
