"""Exact linear algebra over the rationals.

Everything in this package that must decide a yes/no question (rank,
membership, feasibility) goes through these routines, so every verdict is
exact: matrices are lists of lists of ``Fraction`` and elimination never
leaves the rationals.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]
Matrix = list[Row]


def frac(x) -> Fraction:
    """Coerce ints, strings like '1/3' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for j in range(m):
            s = Fraction(0)
            for t in range(k):
                if ai[t]:
                    s += ai[t] * b[t][j]
            oi[j] = s
    return out


def mat_vec(a: Matrix, v: Row) -> Row:
    return [sum((aij * vj for aij, vj in zip(row, v) if aij), Fraction(0)) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = [row[:] for row in mat]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat)[1])


def nullspace(mat: Matrix) -> list[Row]:
    """Basis of the right null space {v : mat @ v = 0}."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(mat: Matrix, rhs: Row) -> Row | None:
    """One solution of mat @ x = rhs (free variables set to 0), or None."""
    if not mat:
        return [] if not any(rhs) else None
    cols = len(mat[0])
    aug = [row[:] + [b] for row, b in zip(mat, rhs)]
    red, pivots = rref(aug)
    if cols in pivots:  # pivot in the rhs column: inconsistent
        return None
    x = [Fraction(0)] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def solve_affine(mat: Matrix, rhs: Row) -> tuple[Row | None, list[Row]]:
    """Full solution set of mat @ x = rhs: (particular or None, nullspace)."""
    part = solve(mat, rhs)
    if part is None:
        return None, []
    return part, nullspace(mat)


def invert(mat: Matrix) -> Matrix:
    n = len(mat)
    aug = [row[:] + ident_row for row, ident_row in zip(mat, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def det(mat: Matrix) -> Fraction:
    n = len(mat)
    m = [row[:] for row in mat]
    d = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def in_span(vectors: list[Row], v: Row) -> bool:
    """Is v in the rational span of ``vectors``?"""
    if not vectors:
        return not any(v)
    base = [list(w) for w in vectors]
    return rank(base) == rank(base + [list(v)])
