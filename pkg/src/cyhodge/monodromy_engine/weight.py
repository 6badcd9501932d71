"""Monodromy weight filtration of an exact nilpotent endomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import linalg
from ..linalg import Matrix, Vector


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class WeightFiltration:
    """``spaces[k]`` is a basis of ``W_k`` for ``-m-1 <= k <= m``; zero-based ``m``."""

    n: int
    m: int
    spaces: dict

    def W(self, k: int) -> list[Vector]:
        if k < -self.m - 1:
            return []
        if k >= self.m:
            return self.spaces[self.m]
        return self.spaces[k]

    def dims(self) -> dict[int, int]:
        return {k: len(self.W(k)) for k in range(-self.m, self.m + 1)}

    def dim_list(self) -> tuple[int, ...]:
        return tuple(len(self.W(k)) for k in range(-self.m, self.m + 1))


def nilpotency_index(N: Matrix) -> int:
    """Smallest ``m`` with ``N^(m+1) = 0``."""
    n = len(N)
    p = linalg.identity(n)
    for k in range(n + 1):
        if linalg.is_zero(p):
            return k - 1
        p = linalg.matmul(p, N)
    raise NotNilpotentError("matrix is not nilpotent")


def _filtration(N: Matrix) -> dict[int, list[Vector]]:
    n = len(N)
    if n == 0:
        return {0: []}
    m = nilpotency_index(N)
    full = linalg.identity(n)
    if m <= 0:
        return {-1: [], 0: linalg.span(full, n)}
    Nm = linalg.matpow(N, m)
    K = linalg.kernel(Nm)
    I = linalg.column_space(Nm)
    # coordinates on K / I through a complement of I inside K
    comp: list[Vector] = []
    cur = list(I)
    for v in K:
        if not linalg.contains(cur, [v]):
            comp.append(v)
            cur.append(v)
    out = {-m - 1: [], -m: I, m - 1: K, m: linalg.span(full, n)}
    if comp:
        basis = list(I) + comp
        # express N c_j in the basis (I, comp); quotient keeps the comp coordinates
        bt = linalg.transpose(basis)
        d = len(comp)
        sub = [[Fraction(0)] * d for _ in range(d)]
        for j, c in enumerate(comp):
            img = linalg.matvec(N, c)
            coords = _solve(bt, img)
            for i in range(d):
                sub[i][j] = coords[len(I) + i]
        inner = _filtration(sub)
        for k in range(-m + 1, m - 1):
            src = inner.get(k)
            if src is None:
                src = [] if k < min(inner) else inner[max(inner)]
            lifted = [[sum((x[i] * comp[i][t] for i in range(d)), Fraction(0)) for t in range(n)] for x in src]
            out[k] = linalg.span(list(I) + lifted, n)
    else:
        for k in range(-m + 1, m - 1):
            out[k] = I
    return out


def _solve(cols_as_rows: Matrix, b: Vector) -> Vector:
    """Solve ``B x = b`` where ``cols_as_rows`` is ``B`` (columns = basis vectors)."""
    aug = [row + [bi] for row, bi in zip(cols_as_rows, b)]
    red, piv = linalg.rref(aug)
    ncols = len(cols_as_rows[0])
    if ncols in piv:
        raise ArithmeticError("vector not in span")
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return x


def weight_filtration(N) -> WeightFiltration:
    """Unique filtration with ``N W_k <= W_{k-2}`` and ``N^k: Gr_k -> Gr_-k`` bijective.

    Built top-down: ``W_{m-1} = ker N^m`` and ``W_{-m} = im N^m``, then the
    same construction applied to the induced map on ``ker N^m / im N^m``.
    """
    Nm = linalg.to_fractions(N)
    n = len(Nm)
    m = nilpotency_index(Nm)
    spaces = _filtration(Nm)
    m = max(m, 0)
    full = {}
    for k in range(-m - 1, m + 1):
        if k in spaces:
            full[k] = spaces[k]
        elif k < min(spaces):
            full[k] = []
        else:
            full[k] = spaces[max(j for j in spaces if j <= k)]
    return WeightFiltration(n, m, full)


def check_axioms(N, W: WeightFiltration) -> list[str]:
    """Violated axioms as messages (empty when all hold)."""
    Nm = linalg.to_fractions(N)
    n = len(Nm)
    bad = []
    ks = range(-W.m - 1, W.m + 1)
    for k in ks:
        if k > -W.m - 1 and not linalg.contains(W.W(k), W.W(k - 1)):
            bad.append(f"W_{k - 1} not contained in W_{k}")
        if not linalg.contains(W.W(k - 2), [linalg.matvec(Nm, v) for v in W.W(k)]):
            bad.append(f"N W_{k} not contained in W_{k - 2}")
    if len(W.W(W.m)) != n:
        bad.append("top step is not the whole space")
    for k in range(0, W.m + 1):
        gr_k = len(W.W(k)) - len(W.W(k - 1))
        gr_mk = len(W.W(-k)) - len(W.W(-k - 1))
        Nk = linalg.matpow(Nm, k)
        img = linalg.span(list(W.W(-k - 1)) + [linalg.matvec(Nk, v) for v in W.W(k)], n)
        if gr_k != gr_mk or len(img) - len(W.W(-k - 1)) != gr_k:
            bad.append(f"N^{k}: Gr_{k} -> Gr_{-k} is not an isomorphism")
        if not linalg.contains(W.W(-k), [linalg.matvec(Nk, v) for v in W.W(k)]):
            bad.append(f"N^{k} W_{k} not contained in W_{-k}")
    return bad
