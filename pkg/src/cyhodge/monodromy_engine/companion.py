"""First-order system ``z Y' = A(z) Y`` in the basis ``(y, theta y, ..., theta^{n-1} y)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..theta_ops import PointLocation, ThetaOperator, local_exponents
from ..theta_ops.poly import RationalPoly, nf_inverse, nf_mul, nf_reduce


@dataclass(frozen=True)
class RationalFunction:
    num: RationalPoly
    den: RationalPoly

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __str__(self) -> str:
        if self.den.degree == 0 and self.den.coeffs[0] == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class CompanionSystem:
    """Companion matrix with rows ``e_{i+1}`` and a last row ``-q_k / q_n``.

    ``q_k(z)`` is the coefficient of ``theta^k`` when the operator is written as
    ``sum_k q_k(z) theta^k``; ``q_n`` is the leading symbol.
    """

    operator: ThetaOperator
    q: tuple[RationalPoly, ...]

    @property
    def n(self) -> int:
        return len(self.q) - 1

    @property
    def entries(self) -> list[list[RationalFunction]]:
        n = self.n
        one = RationalPoly((1,), "z")
        zero = RationalPoly((), "z")
        rows = []
        for i in range(n - 1):
            rows.append([RationalFunction(one if j == i + 1 else zero, one) for j in range(n)])
        sigma = self.q[n]
        rows.append([RationalFunction(-self.q[k], sigma) for k in range(n)])
        return rows

    def evaluate(self, z) -> list[list]:
        return [[f(z) for f in row] for row in self.entries]

    def residue_trace(self, p: PointLocation) -> Fraction:
        """Trace of the residue of ``A(z) dz / z`` at a simple pole ``p``.

        At 0 this is ``trace A(0)``; at a simple root of the symbol it is
        ``-q_{n-1}(p) / (p sigma'(p))``, computed exactly in ``Q[z]/(f)``.
        """
        n = self.n
        sigma = self.q[n]
        if p.kind == "zero":
            if sigma.coeff(0) == 0:
                raise ValueError("0 is not a simple pole of A/z")
            return -self.q[n - 1].coeff(0) / sigma.coeff(0)
        if p.kind != "finite":
            raise ValueError("residue trace is only defined at finite points")
        f = p.minpoly
        ds = nf_reduce(sigma.derivative(), f)
        if ds.is_zero():
            raise ValueError("point is a multiple root of the symbol")
        zden = nf_mul(RationalPoly((0, 1), "z"), ds, f)
        val = nf_mul(-nf_reduce(self.q[n - 1], f), nf_inverse(zden, f), f)
        if val.degree > 0:
            raise ValueError("residue trace is not rational")
        return val.coeff(0)


def companion_system(op: ThetaOperator) -> CompanionSystem:
    n = op.order
    if n < 1:
        raise ValueError("operator has order 0")
    q = tuple(RationalPoly(tuple(op.Q(j).coeff(k) for j in range(op.degree + 1)), "z") for k in range(n + 1))
    return CompanionSystem(op, q)


def expected_residue_trace(op: ThetaOperator, p: PointLocation) -> Fraction:
    """Sum of local exponents shifted by ``n(n-1)/2`` at finite nonzero points."""
    rho = sum(local_exponents(op, p), Fraction(0))
    if p.kind == "zero":
        return rho
    n = op.order
    return rho - Fraction(n * (n - 1), 2)
