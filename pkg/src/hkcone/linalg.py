"""Exact linear algebra over the integers and rationals.

Matrices are tuples of row tuples, vectors are tuples.  Entries are
Python ints or Fractions; no floating point anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import PreconditionError


def mat(rows):
    return tuple(tuple(row) for row in rows)


def identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def dot(u, v):
    if len(u) != len(v):
        raise PreconditionError("dimension mismatch")
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def vec_content(v) -> int:
    """gcd of an integer vector (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def _all_int(rows) -> bool:
    return all(isinstance(x, int) for row in rows for x in row)


def rank(m) -> int:
    rows = [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    if _all_int(rows):
        return _rank_bareiss(rows)
    return _rank_gauss([[Fraction(x) for x in r] for r in rows])


def _rank_bareiss(a) -> int:
    """Fraction-free elimination; mutates its argument."""
    nrows, ncols = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def _rank_gauss(a) -> int:
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, nrows):
            if a[i][c]:
                f = a[i][c] * inv
                for j in range(c, ncols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == nrows:
            break
    return r


def determinant(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


def invert(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise PreconditionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def solve(a, b):
    """Solve A x = b exactly for full-column-rank A (possibly overdetermined).

    Raises PreconditionError if the columns do not span (rank < ncols)
    or the system is inconsistent.
    """
    nrows = len(a)
    if nrows == 0:
        raise PreconditionError("empty system")
    ncols = len(a[0])
    if len(b) != nrows:
        raise PreconditionError("dimension mismatch")
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)]
           for row, rhs in zip(a, b)]
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for row in aug[r:]:
        if row[ncols] != 0:
            raise PreconditionError("inconsistent system")
    if r < ncols:
        raise PreconditionError("underdetermined system")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return tuple(x)


def nullspace(m):
    """Deterministic rational basis of the kernel of m (rows act on vectors)."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(tuple(v))
    return tuple(basis)


def congruence_diagonalize(g):
    """Symmetric congruence T^t G T = diag by Lagrange's method.

    Pivot rule: first nonzero diagonal entry of the active block; if the
    active diagonal vanishes identically, add the column of the first
    nonzero off-diagonal pair (rank-2 hyperbolic split) to create one.
    Works for singular input; zero diagonal entries mark the radical.
    """
    n = len(g)
    m = [[Fraction(x) for x in row] for row in g]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_add(dst, src, f):
        for r in range(n):
            m[r][dst] += f * m[r][src]
        for r in range(n):
            m[dst][r] += f * m[src][r]
        for r in range(n):
            t[r][dst] += f * t[r][src]

    def col_swap(i, j):
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][i]), None)
        if piv is None:
            pair = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if m[i][j]:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break
            col_add(pair[0], pair[1], Fraction(1))
            piv = pair[0]
        if piv != k:
            col_swap(k, piv)
        for j in range(k + 1, n):
            if m[k][j]:
                col_add(j, k, -m[k][j] / m[k][k])
    return mat(t), tuple(m[i][i] for i in range(n))


def smith_normal_form(a):
    """U A V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.

    Pivot: minimal nonzero absolute value in the active block, ties broken
    by smallest row index then smallest column index.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [[int(x) for x in row] for row in a]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, f):          # row_i += f * row_j
        m[i] = [x + f * y for x, y in zip(m[i], m[j])]
        u[i] = [x + f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):          # col_i += f * col_j
        for r in range(nrows):
            m[r][i] += f * m[r][j]
        for r in range(ncols):
            v[r][i] += f * v[r][j]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(nrows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(ncols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def find_pivot(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = abs(m[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    t = 0
    while t < min(nrows, ncols):
        best = find_pivot(t)
        if best is None:
            break
        while True:
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            if m[t][t] < 0:
                m[t] = [-x for x in m[t]]
                u[t] = [-x for x in u[t]]
            p = m[t][t]
            for i in range(t + 1, nrows):
                if m[i][t]:
                    row_op(i, t, -(m[i][t] // p))
            for j in range(t + 1, ncols):
                if m[t][j]:
                    col_op(j, t, -(m[t][j] // p))
            if all(m[i][t] == 0 for i in range(t + 1, nrows)) and \
               all(m[t][j] == 0 for j in range(t + 1, ncols)):
                # enforce divisibility of the remaining block by the pivot
                viol = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if m[i][j] % p:
                            viol = i
                            break
                    if viol is not None:
                        break
                if viol is None:
                    break
                row_op(t, viol, 1)
            best = find_pivot(t)
        t += 1

    return mat(u), mat(m), mat(v)
