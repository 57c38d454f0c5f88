"""Exact dense linear algebra over a field.

Matrices are lists of rows, vectors are lists; entries are field elements.
Nothing here mutates its inputs.
"""

from __future__ import annotations

from .errors import DivisionByZero


def zeros(field, rows, cols):
    return [[field.zero] * cols for _ in range(rows)]


def identity(field, n):
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(field, a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = [field.zero] * cols
        for k in range(inner):
            r = row[k]
            if r.is_zero():
                continue
            bk = b[k]
            for j in range(cols):
                new[j] = new[j] + r * bk[j]
        out.append(new)
    return out


def matvec(field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for r, x in zip(row, v):
            if not r.is_zero():
                acc = acc + r * x
        out.append(acc)
    return out


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_pow(field, a, n):
    out = identity(field, len(a))
    base = a
    while n:
        if n & 1:
            out = matmul(field, out, base)
        base = matmul(field, base, base)
        n >>= 1
    return out


def poly_eval(field, poly, a):
    """Evaluate an ascending coefficient list at the square matrix ``a``."""
    n = len(a)
    acc = zeros(field, n, n)
    for c in reversed(poly):
        acc = matmul(field, acc, a)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def rref(field, a):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field, a):
    return len(rref(field, a)[1])


def nullspace(field, a, cols=None):
    """Basis of the right kernel, as a list of column vectors."""
    if not a:
        n = cols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    n = len(a[0])
    m, pivots = rref(field, a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def column_basis(field, vectors):
    """A maximal independent subfamily of ``vectors`` (kept in order)."""
    if not vectors:
        return []
    _, pivots = rref(field, transpose(vectors))
    return [vectors[i] for i in pivots]


def det(field, a):
    m = [list(row) for row in a]
    n = len(m)
    out = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(field, a):
    n = len(a)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(a)]
    m, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("singular matrix")
    return [row[n:] for row in m]


def solve(field, a, b):
    """Solve ``a x = b`` for a column-full-rank ``a``; ``b`` is a matrix.

    Raises ValueError when some column of ``b`` is outside the column space.
    """
    rows = len(a)
    k = len(a[0]) if a else 0
    cols = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    m, pivots = rref(field, aug)
    if any(p >= k for p in pivots):
        raise ValueError("inconsistent system")
    if pivots != list(range(k)):
        raise ValueError("matrix does not have full column rank")
    return [m[i][k:k + cols] for i in range(k)]


def first_dependency(field, vectors):
    """Coefficients ``c_0..c_j`` of the first linear relation among ``vectors``.

    ``vectors`` is any iterable; it is consumed lazily and the relation
    involving the earliest possible last index ``j`` is returned with
    ``c_j = 1``.  Returns None if the iterable is exhausted first.
    """
    reduced = []  # (vector, pivot, combination in terms of the originals)
    for idx, v in enumerate(vectors):
        v = list(v)
        comb = [field.zero] * idx + [field.one]
        for rv, piv, rc in reduced:
            c = v[piv]
            if c.is_zero():
                continue
            v = [x - c * y for x, y in zip(v, rv)]
            comb = [x - c * y for x, y in zip(comb, rc + [field.zero] * (len(comb) - len(rc)))]
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return comb
        inv = v[piv].inverse()
        v = [x * inv for x in v]
        comb = [x * inv for x in comb]
        # keep earlier reduced vectors clean at the new pivot
        new_reduced = []
        for rv, rp, rc in reduced:
            c = rv[piv]
            if not c.is_zero():
                rv = [x - c * y for x, y in zip(rv, v)]
                rc = rc + [field.zero] * (len(comb) - len(rc))
                rc = [x - c * y for x, y in zip(rc, comb)]
            new_reduced.append((rv, rp, rc))
        new_reduced.append((v, piv, comb))
        reduced = new_reduced
    return None


def minimal_polynomial(field, a):
    """Monic minimal polynomial of a square matrix (ascending coefficients)."""
    n = len(a)

    def powers():
        p = identity(field, n)
        while True:
            yield [x for row in p for x in row]
            p = matmul(field, p, a)

    return first_dependency(field, powers())


def krylov_minimal_polynomial(field, a, v):
    """Monic minimal polynomial of ``a`` relative to the vector ``v``."""

    def orbit():
        w = list(v)
        while True:
            yield w
            w = matvec(field, a, w)

    return first_dependency(field, orbit())


def is_symmetric(a):
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def block_diag(field, a, b):
    n, m = len(a), len(b)
    out = zeros(field, n + m, n + m)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = b[i][j]
    return out


def kron(a, b):
    n, m = len(a), len(b)
    out = []
    for i in range(n):
        for k in range(m):
            out.append([a[i][j] * b[k][l] for j in range(n) for l in range(m)])
    return out
