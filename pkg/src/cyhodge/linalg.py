"""Exact linear algebra over Q on lists of Fractions.

Matrices are lists of rows.  Subspaces of Q^n are represented by a list of
basis vectors (rows), kept in reduced row echelon form by ``span``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def to_fractions(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Vector) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def matpow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return identity(n)
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def span(vectors: Sequence[Vector], n: int) -> list[Vector]:
    """Canonical basis (RREF rows) of the span of ``vectors`` in Q^n."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    return rref(vs)[0]


def column_space(a: Matrix) -> list[Vector]:
    return span(transpose(a), len(a))


def kernel(a: Matrix) -> list[Vector]:
    return span(nullspace(a, len(a[0]) if a else 0), len(a[0]) if a else 0)


def image_of(a: Matrix, basis: Sequence[Vector]) -> list[Vector]:
    n = len(a)
    return span([matvec(a, v) for v in basis], n)


def intersect(u: Sequence[Vector], v: Sequence[Vector], n: int) -> list[Vector]:
    """Intersection of two subspaces given by bases."""
    if not u or not v:
        return []
    # solve sum x_i u_i = sum y_j v_j
    cols = [list(x) for x in u] + [[-c for c in y] for y in v]
    sol = nullspace(transpose(cols), len(cols))
    out = []
    for s in sol:
        out.append([sum((s[i] * u[i][k] for i in range(len(u))), Fraction(0)) for k in range(n)])
    return span(out, n)


def contains(big: Sequence[Vector], small: Sequence[Vector]) -> bool:
    if not small:
        return True
    if not big:
        return all(all(x == 0 for x in v) for v in small)
    return rank([list(v) for v in big] + [list(v) for v in small]) == rank([list(v) for v in big])


def sum_spaces(u: Sequence[Vector], v: Sequence[Vector], n: int) -> list[Vector]:
    return span(list(u) + list(v), n)
