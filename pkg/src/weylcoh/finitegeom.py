"""Finite fields, the projective plane over them, and general position.

Elements of ``F_Q`` (``Q = p^N``) are represented by discrete logarithms
with respect to a fixed primitive element; zero is the sentinel ``-1``.
Addition goes through a Zech logarithm table, so every field operation is
a table lookup.  Fields are small here (at most a few hundred thousand
elements), so the tables are cheap.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

MAX_FIELD_SIZE = 600_000
ZERO = -1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """(p, n) with q = p^n, or ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            r = q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1 or not _is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return p, n
    raise ValueError(f"{q} is not a prime power")


# -- polynomials over F_p (lists, constant term first) --------------------------

def _pmod(a, f, p):
    a = [x % p for x in a]
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < df:
            break
        c = a[-1] * inv % p
        s = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[s + i] = (a[s + i] - c * fc) % p
        while a and a[-1] == 0:
            a.pop()
    return a or [0]


def _pmulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a = _trim(a)
    b = _trim(b)
    while any(b):
        a, b = b, _pmod(a, b, p)
        b = _trim(b)
    return a


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    n = len(f) - 1
    x = [0, 1]
    if _ppowmod(x, p ** n, f, p) != _pmod(x, f, p):
        return False
    for r in _prime_factors(n):
        h = _ppowmod(x, p ** (n // r), f, p)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else h
        diff = list(h)
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, diff, p)
        if len(_trim(g)) > 1:
            return False
    return True


class FiniteField:
    """F_{p^N} with log/Zech tables.  Use ``make_field`` or ``of_order``."""

    _cache: dict = {}

    def __init__(self, p: int, degree: int, seed: int = 0):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        size = p ** degree
        if size > MAX_FIELD_SIZE:
            raise ValueError(f"field of size {size} exceeds the bound {MAX_FIELD_SIZE}")
        self.p = p
        self.degree = degree
        self.size = size
        self.zero = ZERO
        self.one = 0
        rng = random.Random(seed)
        if degree == 1:
            self.modulus = [0, 1]
        else:
            while True:
                f = [rng.randrange(p) for _ in range(degree)] + [1]
                if f[0] and is_irreducible(f, p):
                    break
            self.modulus = f
        self._build_tables(rng)

    @classmethod
    def of_order(cls, q: int) -> "FiniteField":
        if q not in cls._cache:
            p, n = prime_power(q)
            cls._cache[q] = cls(p, n)
        return cls._cache[q]

    def _build_tables(self, rng):
        p, n, Q = self.p, self.degree, self.size
        f = self.modulus
        # codes: sum c_i p^i for the coefficient vector
        facs = _prime_factors(Q - 1)
        candidates = itertools.chain([[0, 1]] if n > 1 else [], ([c] for c in range(2, p)),
                                     ([rng.randrange(p) for _ in range(n)] for _ in itertools.count()))
        for g in candidates:
            g = _pmod(g, f, p) if n > 1 else [g[0] % p]
            if not any(g):
                continue
            if Q == 2:
                break
            if all(self._pow_poly(g, (Q - 1) // r) != [1] for r in facs):
                break
        self.generator_poly = g
        # multiplication by g as a linear map on coefficient vectors
        exp = np.empty(Q - 1, dtype=np.int64)
        cur = [1] + [0] * (n - 1)
        weights = [p ** i for i in range(n)]
        for i in range(Q - 1):
            exp[i] = sum(c * w for c, w in zip(cur, weights))
            cur = self._mul_poly(cur, g)
            cur = cur + [0] * (n - len(cur))
        log = np.full(Q, ZERO, dtype=np.int64)
        log[exp] = np.arange(Q - 1)
        if len(np.unique(exp)) != Q - 1:
            raise RuntimeError("element is not primitive")
        self._exp = exp
        self._log = log
        # Zech: log(1 + g^d); adding 1 changes only the constant coefficient
        digits0 = exp % p
        plus_one = exp - digits0 + (digits0 + 1) % p
        self._zech = log[plus_one]
        self._half = (Q - 1) // 2 if p != 2 else 0
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()
        self._zech_list = self._zech.tolist()

    def _mul_poly(self, a, b):
        if self.degree == 1:
            return [(a[0] * b[0]) % self.p]
        return _pmulmod(a, b, self.modulus, self.p)

    def _pow_poly(self, a, e):
        if self.degree == 1:
            return [pow(a[0], e, self.p)]
        r = _ppowmod(a, e, self.modulus, self.p)
        return _trim(r)

    # -- arithmetic on log representation --------------------------------

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        z = self._zech_list[(b - a) % (self.size - 1)]
        if z == ZERO:
            return ZERO
        return (a + z) % (self.size - 1)

    def neg(self, a: int) -> int:
        if a == ZERO:
            return ZERO
        return (a + self._half) % (self.size - 1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % (self.size - 1)

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % (self.size - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == ZERO:
            if e == 0:
                return 0
            return ZERO
        return (a * e) % (self.size - 1)

    def frob(self, a: int, q: int) -> int:
        """a^q."""
        return self.pow(a, q)

    def power_of_generator(self, i: int) -> int:
        return i % (self.size - 1)

    def from_int(self, n: int) -> int:
        """Image of the integer n (the prime subfield)."""
        n %= self.p
        return ZERO if n == 0 else self._log_list[n]

    def int_combination(self, terms) -> int:
        acc = ZERO
        for c, x in terms:
            if c == 0 or x == ZERO:
                continue
            acc = self.add(acc, self.mul(self.from_int(c), x))
        return acc

    def elements(self) -> list[int]:
        return [ZERO] + list(range(self.size - 1))

    def subfield(self, order: int) -> list[int]:
        """Elements of the subfield with the given number of elements."""
        if (self.size - 1) % (order - 1):
            raise ValueError("not a subfield")
        step = (self.size - 1) // (order - 1)
        return [ZERO] + list(range(0, self.size - 1, step))

    def code(self, a: int) -> int:
        """Coefficient-vector code of a (0 for zero)."""
        return 0 if a == ZERO else self._exp_list[a]

    def nullspace(self, mat) -> list[list[int]]:
        """Right null space basis of a matrix over this field."""
        a = [list(r) for r in mat]
        m = len(a)
        n = len(a[0]) if m else 0
        piv = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, m) if a[i][c] != ZERO), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = self.inv(a[r][c])
            a[r] = [self.mul(x, inv) for x in a[r]]
            for i in range(m):
                if i != r and a[i][c] != ZERO:
                    f = a[i][c]
                    a[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(a[i], a[r])]
            piv.append(c)
            r += 1
            if r == m:
                break
        free = [c for c in range(n) if c not in piv]
        out = []
        for f in free:
            v = [ZERO] * n
            v[f] = self.one
            for i, c in enumerate(piv):
                v[c] = self.neg(a[i][f])
            out.append(v)
        return out

    def det3(self, r0, r1, r2) -> int:
        a, b, c = r0
        d, e, f = r1
        g, h, i = r2
        m, ad, s = self.mul, self.add, self.sub
        t1 = m(a, s(m(e, i), m(f, h)))
        t2 = m(b, s(m(d, i), m(f, g)))
        t3 = m(c, s(m(d, h), m(e, g)))
        return ad(s(t1, t2), t3)

    def det(self, mat) -> int:
        a = [list(r) for r in mat]
        n = len(a)
        out = self.one
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k] != ZERO), None)
            if p is None:
                return ZERO
            if p != k:
                a[k], a[p] = a[p], a[k]
                out = self.neg(out)
            out = self.mul(out, a[k][k])
            inv = self.inv(a[k][k])
            for i in range(k + 1, n):
                if a[i][k] != ZERO:
                    f = self.mul(a[i][k], inv)
                    a[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(a[i], a[k])]
        return out


@dataclass(frozen=True)
class FieldTower:
    """F_q (q = p^n) inside the top field F_{q^m}."""

    p: int
    n: int
    m: int
    field: FiniteField

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def modulus(self) -> list[int]:
        return self.field.modulus

    def frobenius_q(self, a: int) -> int:
        return self.field.frob(a, self.q)

    def base_field(self) -> list[int]:
        return self.field.subfield(self.q)

    def level(self, c: int) -> list[int]:
        """Elements of the intermediate field F_{q^c}."""
        return self.field.subfield(self.q ** c)


def make_field(p: int, n: int, m: int) -> FieldTower:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n * m < 1:
        raise ValueError("degree must be positive")
    key = (p, n * m)
    if key not in FiniteField._cache:
        FiniteField._cache[key] = FiniteField(p, n * m)
    return FieldTower(p, n, m, FiniteField._cache[key])


# -- projective plane ----------------------------------------------------------

def normalize(f: FiniteField, pt) -> tuple[int, int, int]:
    """Scale so the first nonzero coordinate is 1."""
    for x in pt:
        if x != ZERO:
            inv = f.inv(x)
            return tuple(f.mul(y, inv) for y in pt)
    raise ValueError("zero vector is not a projective point")


def projective_points(f: FiniteField, coords=None) -> list[tuple[int, int, int]]:
    """Normalized points of P^2 with coordinates in ``coords`` (a subfield list)."""
    coords = f.elements() if coords is None else coords
    out = []
    for y in coords:
        for z in coords:
            out.append((f.one, y, z))
    for z in coords:
        out.append((ZERO, f.one, z))
    out.append((ZERO, ZERO, f.one))
    return out


def frobenius_point(f: FiniteField, pt, q: int):
    return tuple(f.frob(x, q) for x in pt)


def collinear(f: FiniteField, a, b, c) -> bool:
    return f.det3(a, b, c) == ZERO


def conic_row(f: FiniteField, pt):
    x, y, z = pt
    return [f.mul(x, x), f.mul(y, y), f.mul(z, z), f.mul(x, y), f.mul(x, z), f.mul(y, z)]


def on_common_conic(f: FiniteField, pts) -> bool:
    return f.det([conic_row(f, p) for p in pts]) == ZERO


def general_position(f: FiniteField, points, check_conic: bool = True) -> bool:
    pts = [normalize(f, p) for p in points]
    if len(pts) > 6:
        raise ValueError("at most six points")
    if len(set(pts)) != len(pts):
        return False
    for a, b, c in itertools.combinations(pts, 3):
        if collinear(f, a, b, c):
            return False
    if check_conic and len(pts) == 6 and on_common_conic(f, pts):
        return False
    return True


def pgl3_order(q: int) -> int:
    if q < 2:
        raise ValueError("q must be at least 2")
    return (q * q + q + 1) * (q ** 3 - q) * (q ** 3 - q * q)
