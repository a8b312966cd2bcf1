"""Exact integer and rational linear algebra on small matrices.

Matrices are lists of lists of Python ints (or Fractions).  Everything here
is meant for ranks up to about 8, so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def as_int_matrix(rows) -> Matrix:
    return [[int(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    nb = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(nb)] for i in range(len(a))]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form with zero rows removed.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.  Two integer row spaces are equal iff their HNFs are.
    """
    a = as_int_matrix(rows)
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid down the column until a single nonzero entry remains at row r.
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                f = a[i][c] // a[r][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
    return [row for row in a[:r]]


def pivots(h: Matrix) -> list[int]:
    out = []
    for row in h:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def rank(rows) -> int:
    return len(hnf(rows)) if rows else 0


def rref_rational(rows) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    return a[:r], piv


def kernel(rows, ncols: int | None = None) -> Matrix:
    """HNF basis (rows) of the saturated lattice {x : rows . x = 0}."""
    if not rows:
        assert ncols is not None
        return identity(ncols)
    n = len(rows[0])
    k = _kernel_raw(rows, n)
    return hnf(k) if k else []


def saturate(rows) -> Matrix:
    """HNF basis of (span_Q rows) intersected with Z^n."""
    rows = [r for r in as_int_matrix(rows) if any(r)]
    if not rows:
        return []
    return _saturate_by_snf(rows)


def _kernel_raw(rows, n) -> Matrix:
    red, piv = rref_rational(rows)
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        w = [int(x * den) for x in v]
        g = 0
        for x in w:
            g = gcd(g, x)
        out.append([x // g for x in w])
    # Integer combinations of primitive rational kernel vectors may still not
    # be saturated; reduce through the Smith form.
    return _saturate_by_snf(out)


def _saturate_by_snf(rows) -> Matrix:
    if not rows:
        return []
    _u, d, _v, _uinv, vinv = smith_full(rows)
    # rows = U^-1 D V^-1; the saturation is spanned by the first k rows of V^-1.
    k = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    return hnf(vinv[:k])


def smith(a) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (U, D, V) with U a V = D, U, V unimodular."""
    u, d, v, _, _ = smith_full(a)
    return u, d, v


def smith_full(a):
    """Smith normal form (U, D, V, U^-1, V^-1) with U a V = D."""
    a = as_int_matrix(a)
    m, n = len(a), len(a[0])
    u = identity(m)
    v = identity(n)
    ui = identity(m)
    vi = identity(n)
    d = [row[:] for row in a]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for row in ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def add_row(src, dst, f):
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]
        for row in ui:
            row[src] -= f * row[dst]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]
        vi[src] = [x - f * y for x, y in zip(vi[src], vi[dst])]

    t = 0
    while t < min(m, n):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t]:
                    f = d[i][t] // d[t][t]
                    add_row(t, i, -f)
                    if d[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if d[t][j]:
                    f = d[t][j] // d[t][t]
                    add_col(t, j, -f)
                    if d[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility condition
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
            for row in ui:
                row[t] = -row[t]
        t += 1
    return u, d, v, ui, vi


def det(a) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(a)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for row in a for x in row):
        return _det_fraction(a)
    m = as_int_matrix(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k]), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_fraction(a):
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    out = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            out = -out
        out *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return out


def inverse_rational(a) -> list[list[Fraction]]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref_rational(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def inverse_unimodular(a) -> Matrix:
    inv = inverse_rational(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def solve_rational(a, b) -> list[Fraction] | None:
    """Solve x . A = b for a row vector x (A given by rows); None if inconsistent."""
    at = transpose(a)
    aug = [list(r) + [bb] for r, bb in zip(at, b)]
    red, piv = rref_rational(aug)
    n = len(a)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = red[i][n]
    return x


def charpoly(a) -> list[int]:
    """Characteristic polynomial det(xI - A), coefficients from x^0 upward."""
    n = len(a)
    if n == 0:
        return [1]
    # Faddeev-LeVerrier; every division is exact for integer matrices.
    am = [[int(x) for x in row] for row in a]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        mk = matmul(am, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        tr = sum(sum(am[i][j] * mk[j][i] for j in range(n)) for i in range(n))
        if tr % k:
            raise ValueError("non-integral characteristic polynomial")
        coeffs[n - k] = -tr // k
    return coeffs


def poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low to high)."""
    num = list(num)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    den = list(den)
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    if len(num) < len(den):
        if any(num):
            raise ArithmeticError("division is not exact")
        return [0]
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("division is not exact")
        q = c // lead
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("division is not exact")
    return out


def in_row_space(h: Matrix, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of v in the HNF basis h, or None if v is not in it."""
    v = list(v)
    coords = []
    for row in h:
        p = next(j for j, x in enumerate(row) if x)
        if v[p] % row[p]:
            return None
        f = v[p] // row[p]
        coords.append(f)
        if f:
            v = [x - f * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coords
