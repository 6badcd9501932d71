"""Holomorphic power-series solutions at 0 and Hadamard-product annihilators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..linalg import nullspace
from .operator import THETA, ThetaOperator
from .poly import RationalPoly


class SeriesError(ValueError):
    pass


class ResonanceError(SeriesError):
    """The indicial polynomial at 0 vanishes at a positive integer."""


class NoHolomorphicSolutionError(SeriesError):
    """Exponent 0 does not occur at z = 0."""


@dataclass(frozen=True)
class SeriesSolution:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("series must be normalized to A_0 = 1")

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    @property
    def terms(self) -> int:
        return len(self.coefficients) - 1


def series_solution(op: ThetaOperator, M: int) -> SeriesSolution:
    """Coefficients ``A_0..A_M`` of the solution with ``A_0 = 1``."""
    if M < 0:
        raise ValueError("number of terms must be non-negative")
    q0 = op.Q(0)
    if q0(0) != 0:
        raise NoHolomorphicSolutionError("0 is not a local exponent at z = 0")
    a = [Fraction(1)]
    for n in range(1, M + 1):
        d = q0(n)
        if d == 0:
            raise ResonanceError(f"indicial polynomial vanishes at n = {n}")
        s = Fraction(0)
        for j, q in op.terms():
            if j and j <= n and a[n - j]:
                s += q(n - j) * a[n - j]
        a.append(-s / d)
    return SeriesSolution(tuple(a))


def recurrence_residuals(op: ThetaOperator, coeffs: Sequence[Fraction], upto: int | None = None) -> list[Fraction]:
    """Coefficients of ``z**n`` in ``op`` applied to the truncated series, n <= upto."""
    upto = len(coeffs) - 1 if upto is None else upto
    return [op.apply_to_series(coeffs, n) for n in range(upto + 1)]


def annihilates(op: ThetaOperator, coeffs: Sequence[Fraction], upto: int | None = None) -> bool:
    return all(r == 0 for r in recurrence_residuals(op, coeffs, upto))


def hadamard_series(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return [x * y for x, y in zip(a, b)]


def guess_annihilator(coeffs: Sequence[Fraction], order: int, degree: int) -> ThetaOperator | None:
    """Operator with ``order`` in theta and z-degree ``degree`` annihilating the
    truncated series, if the linear system has a solution with ``Q_0 != 0``.

    Uses every available coefficient as an equation.
    """
    nunk = (order + 1) * (degree + 1)
    rows = []
    # unknown (j, k) is the coefficient of z^j theta^k
    for n in range(len(coeffs)):
        row = []
        for j in range(degree + 1):
            m = n - j
            val = coeffs[m] if m >= 0 else 0
            for k in range(order + 1):
                row.append(Fraction(m) ** k * val if val else Fraction(0))
        rows.append(row)
    basis = nullspace(rows, nunk)
    for v in basis:
        terms = {}
        for j in range(degree + 1):
            cs = v[j * (order + 1):(j + 1) * (order + 1)]
            terms[j] = RationalPoly(tuple(cs), THETA)
        if terms[0].is_zero():
            continue
        return ThetaOperator.from_terms(terms)
    return None


def hadamard_annihilator(
    rec_a: ThetaOperator,
    rec_b: ThetaOperator,
    max_order: int,
    max_degree: int,
    verify_terms: int | None = None,
) -> ThetaOperator | None:
    """Smallest operator within the bounds annihilating ``sum A_n B_n z**n``.

    Order is minimized first, then z-degree.  The candidate is accepted only
    if it annihilates the product series through ``verify_terms`` (at least
    ``3 * max_order * max_degree``) coefficients.  Returns None when nothing
    is found within the bounds.
    """
    if max_order < 1 or max_degree < 1:
        raise ValueError("bounds must be positive")
    need = 3 * max_order * max_degree
    verify_terms = max(need, verify_terms or 0)
    nmax = max(verify_terms, (max_order + 1) * (max_degree + 1) + 20)
    sa = series_solution(rec_a, nmax).coefficients
    sb = series_solution(rec_b, nmax).coefficients
    prod = hadamard_series(sa, sb)
    for r in range(1, max_order + 1):
        for d in range(1, max_degree + 1):
            neq = (r + 1) * (d + 1) + 10
            cand = guess_annihilator(prod[:neq], r, d)
            if cand is not None and annihilates(cand, prod, verify_terms):
                return cand
    return None
