"""Differential operators ``sum_j z**j * Q_j(theta)`` with ``theta = z d/dz``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterator, Mapping, Sequence

from .poly import RationalPoly, format_poly

THETA = "T"


@lru_cache(maxsize=None)
def stirling2(k: int, i: int) -> int:
    if k == i:
        return 1
    if i == 0 or i > k:
        return 0
    return i * stirling2(k - 1, i) + stirling2(k - 1, i - 1)


@dataclass(frozen=True)
class ThetaOperator:
    """Exact operator ``sum_j z**j Q_j(theta)``; ``coefficients[j]`` is ``Q_j``.

    Instances built by the public helpers are normalized: ``Q_0 != 0``,
    integer coefficients with trivial content, and ``Q_0`` has a positive
    leading coefficient.
    """

    coefficients: tuple[RationalPoly, ...]

    def __post_init__(self):
        cs = [RationalPoly(q.coeffs, THETA) for q in self.coefficients]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def from_terms(cls, terms: Mapping[int, RationalPoly] | Sequence[RationalPoly]) -> ThetaOperator:
        if isinstance(terms, Mapping):
            if any(j < 0 for j in terms):
                raise ValueError("negative power of z")
            d = max(terms, default=-1)
            seq = [terms.get(j, RationalPoly((), THETA)) for j in range(d + 1)]
        else:
            seq = list(terms)
        return cls(tuple(seq)).normalized()

    # -- shape --------------------------------------------------------------

    @property
    def order(self) -> int:
        return max((q.degree for q in self.coefficients), default=-1)

    @property
    def degree(self) -> int:
        """Highest power of z."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def Q(self, j: int) -> RationalPoly:
        if 0 <= j < len(self.coefficients):
            return self.coefficients[j]
        return RationalPoly((), THETA)

    def terms(self) -> Iterator[tuple[int, RationalPoly]]:
        for j, q in enumerate(self.coefficients):
            if not q.is_zero():
                yield j, q

    def symbol(self) -> RationalPoly:
        """Leading symbol ``sigma(z) = sum_j z**j * [theta**order] Q_j``."""
        n = self.order
        return RationalPoly(tuple(q.coeff(n) for q in self.coefficients), "z")

    # -- normal form ----------------------------------------------------------

    def normalized(self) -> ThetaOperator:
        cs = list(self.coefficients)
        if not cs:
            raise ValueError("zero operator")
        while cs[0].is_zero():
            cs.pop(0)  # drop a left factor z
        den = lcm(1, *(q.denominator_lcm() for q in cs))
        cs = [q * den for q in cs]
        g = gcd(*(q.numerator_gcd() for q in cs if not q.is_zero()))
        sign = -1 if cs[0].leading < 0 else 1
        cs = [q * Fraction(sign, g) for q in cs]
        return ThetaOperator(tuple(cs))

    # -- algebra --------------------------------------------------------------

    def __mul__(self, other: ThetaOperator) -> ThetaOperator:
        """Composition ``self o other`` (not normalized)."""
        return ThetaOperator(tuple(ore_mul(dict(self.terms()), dict(other.terms())).get(j, RationalPoly((), THETA))
                                   for j in range(self.degree + other.degree + 1)))

    def apply_to_series(self, coeffs: Sequence[Fraction], n: int) -> Fraction:
        """Coefficient of ``z**n`` in ``L(sum_m coeffs[m] z**m)``."""
        total = Fraction(0)
        for j, q in self.terms():
            m = n - j
            if 0 <= m < len(coeffs) and coeffs[m]:
                total += q(m) * coeffs[m]
        return total

    # -- conversions ----------------------------------------------------------

    def dform(self) -> list[RationalPoly]:
        """Coefficients ``p_k(z)`` with ``L = sum_k p_k(z) (d/dz)**k``."""
        n = self.order
        out = [[Fraction(0)] * (self.degree + n + 1) for _ in range(n + 1)]
        for j, q in self.terms():
            for k, c in enumerate(q.coeffs):
                if c:
                    for i in range(k + 1):
                        out[i][j + i] += c * stirling2(k, i)
        return [RationalPoly(tuple(row), "z") for row in out]

    def __str__(self) -> str:
        out = ""
        for j, q in self.terms():
            if j == 0:
                out = format_poly(q.coeffs, THETA)
                continue
            zpow = "z" if j == 1 else f"z^{j}"
            neg = q.leading < 0
            text = f"{zpow}*({format_poly((-q if neg else q).coeffs, THETA)})"
            if not out:
                out = ("-" if neg else "") + text
            else:
                out += (" - " if neg else " + ") + text
        return out or "0"

    def __repr__(self) -> str:
        return f"ThetaOperator({str(self)!r})"


def ore_mul(a: Mapping[int, RationalPoly], b: Mapping[int, RationalPoly]) -> dict[int, RationalPoly]:
    """Product in the algebra generated by z and theta with ``theta z = z (theta + 1)``."""
    out: dict[int, RationalPoly] = {}
    for i, p in a.items():
        for j, q in b.items():
            term = p.shift(j) * q
            out[i + j] = out[i + j] + term if i + j in out else term
    return {k: v for k, v in out.items() if not v.is_zero()}


def pullback(op: ThetaOperator, e: int) -> ThetaOperator:
    """Operator annihilating ``phi(w**e)`` for each solution ``phi`` of ``op``.

    ``z = w**e`` turns ``theta_z`` into ``theta_w / e``.
    """
    if e < 1:
        raise ValueError("pullback exponent must be positive")
    if e == 1:
        return op.normalized()
    terms = {e * j: q.scale_arg(Fraction(1, e)) for j, q in op.terms()}
    return ThetaOperator.from_terms(terms)


def invert(op: ThetaOperator) -> ThetaOperator:
    """Change of coordinate ``z -> 1/z`` (so ``theta -> -theta``)."""
    d = op.degree
    terms = {d - j: q.scale_arg(-1) for j, q in op.terms()}
    return ThetaOperator.from_terms(terms)


def rescale(op: ThetaOperator, c) -> ThetaOperator:
    """Operator for ``phi(c * z)``: substitute ``z -> c z``."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("rescaling by zero")
    return ThetaOperator.from_terms({j: q * c**j for j, q in op.terms()})
