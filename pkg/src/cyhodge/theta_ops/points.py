"""Singular points and local exponents of theta-operators.

Finite nonzero singular points are roots of the leading symbol.  They are
kept exactly as (irreducible minimal polynomial, root index); arithmetic at
such a point happens in ``Q[z]/(f)``, so local exponents come out exact for
points of any algebraic degree.  A complex approximation is attached for the
numeric side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .operator import ThetaOperator, invert
from .poly import (
    RationalPoly,
    factor_over_q,
    format_rational,
    nf_inverse,
    nf_mul,
    nf_reduce,
    rational_roots,
)

ROOT_DPS = 60


class IndicialError(ValueError):
    """Raised when exponents are not rational or the point is irregular."""


@dataclass(frozen=True)
class PointLocation:
    kind: str  # "zero", "infinity" or "finite"
    minpoly: RationalPoly | None = None
    root_index: int = 0
    approx: mpmath.mpc | None = field(default=None, compare=False, repr=False)

    @classmethod
    def zero(cls) -> PointLocation:
        return cls("zero", approx=mpmath.mpc(0))

    @classmethod
    def infinity(cls) -> PointLocation:
        return cls("infinity")

    @property
    def is_finite_nonzero(self) -> bool:
        return self.kind == "finite"

    @property
    def exact_value(self) -> Fraction | None:
        """Rational value for rational points, None otherwise."""
        if self.kind == "zero":
            return Fraction(0)
        if self.kind == "finite" and self.minpoly.degree == 1:
            c0, c1 = self.minpoly.coeffs
            return -c0 / c1
        return None

    @property
    def label(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "infinity":
            return "oo"
        v = self.exact_value
        if v is not None:
            return format_rational(v)
        return f"root[{self.root_index}]({self.minpoly})"

    def __str__(self) -> str:
        if self.kind == "finite" and self.exact_value is None:
            return f"{self.label} ~ {mpmath.nstr(self.approx, 12)}"
        return self.label

    def sort_key(self):
        if self.kind == "zero":
            return (0, 0.0, 0.0)
        if self.kind == "infinity":
            return (2, 0.0, 0.0)
        return (1, float(abs(self.approx)), float(mpmath.arg(self.approx)))


def _sorted_roots(f: RationalPoly, dps: int = ROOT_DPS) -> list[mpmath.mpc]:
    with mpmath.workdps(dps + 20):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)]
        if f.degree == 1:
            roots = [mpmath.mpc(-cs[1] / cs[0])]
        else:
            roots = mpmath.polyroots(cs, maxsteps=400, extraprec=4 * dps + 100)
            roots = [_newton_polish(f, mpmath.mpc(r)) for r in roots]
        # tiny imaginary noise is dropped; order by real part, then imaginary part
        cleaned = []
        for r in roots:
            r = mpmath.mpc(r)
            if abs(r.imag) < mpmath.mpf(10) ** (-dps):
                r = mpmath.mpc(r.real, 0)
            cleaned.append(r)
        cleaned.sort(key=lambda r: (float(r.real), float(r.imag)))
    # mpmath numbers keep their own precision, independent of the caller's context
    return cleaned


def _newton_polish(f: RationalPoly, r):
    df = f.derivative()
    for _ in range(6):
        d = df(r)
        if d == 0:
            break
        r = r - f(r) / d
    return r


def locate_roots(poly: RationalPoly, exclude_zero: bool = True) -> list[PointLocation]:
    """Distinct roots of ``poly`` as exact point records."""
    pts: list[PointLocation] = []
    for f, _ in factor_over_q(poly):
        if exclude_zero and f.degree == 1 and f.coeffs[0] == 0:
            continue
        f = f.with_var("z")
        for i, r in enumerate(_sorted_roots(f)):
            pts.append(PointLocation("finite", f, i, r))
    pts.sort(key=PointLocation.sort_key)
    return pts


# -- local analysis at a point ------------------------------------------------


def _orders_at_zero(dform: list[RationalPoly]) -> list[int | None]:
    return [None if p.is_zero() else p.valuation() for p in dform]


def _is_ordinary_at_zero(op: ThetaOperator) -> bool:
    dform = op.dform()
    orders = _orders_at_zero(dform)
    n = len(dform) - 1
    return all(o is None or o >= orders[n] for o in orders[:n])


def _taylor_coeffs_mod(p: RationalPoly, f: RationalPoly, upto: int) -> list[RationalPoly]:
    """Coefficients of ``t**m`` in ``p(x + t)`` for m < upto, reduced mod ``f``."""
    out = []
    deriv = p.with_var("z")
    fact = 1
    for m in range(upto):
        if m:
            fact *= m
            deriv = deriv.derivative()
        out.append(nf_reduce(deriv * Fraction(1, fact), f))
    return out


def _local_data_finite(op: ThetaOperator, f: RationalPoly):
    """Orders and lowest Taylor coefficients of the D-form coefficients at a root of ``f``."""
    dform = op.dform()
    n = len(dform) - 1
    data = []
    for p in dform:
        if p.is_zero():
            data.append((None, None))
            continue
        coeffs = _taylor_coeffs_mod(p, f, p.degree + 1)
        for m, c in enumerate(coeffs):
            if not c.is_zero():
                data.append((m, c))
                break
        else:  # vanishes identically on the root: cannot happen for nonzero p of lower degree
            data.append((None, None))
    return n, data


def _indicial_from_local(n: int, data, f: RationalPoly | None) -> RationalPoly:
    shifted = [(o - k, k, c) for k, (o, c) in enumerate(data) if o is not None]
    mu = min(s for s, _, _ in shifted)
    lead = next(((s, c) for s, k, c in shifted if k == n), None)
    if lead is None or lead[0] != mu:
        raise IndicialError("irregular singular point")
    inv = nf_inverse(lead[1], f) if f is not None else None
    ind = RationalPoly((), "T")
    for s, k, c in shifted:
        if s != mu:
            continue
        c = nf_mul(c, inv, f) if f is not None else c
        if c.degree > 0:
            raise IndicialError("indicial polynomial has irrational coefficients")
        ff = RationalPoly((1,), "T")
        for t in range(k):
            ff = ff * RationalPoly((-t, 1), "T")
        ind = ind + ff * c.coeff(0)
    return ind.monic()


def is_singular(op: ThetaOperator, p: PointLocation) -> bool:
    if p.kind == "zero":
        return not _is_ordinary_at_zero(op)
    if p.kind == "infinity":
        return not _is_ordinary_at_zero(invert(op))
    n, data = _local_data_finite(op, p.minpoly)
    lead = data[n][0]
    return any(o is not None and o < lead for o, _ in data[:n])


def singular_points(op: ThetaOperator) -> list[PointLocation]:
    """0 and oo when singular, plus every nonzero root of the leading symbol."""
    if op.order < 1:
        raise ValueError("operator has order 0")
    pts: list[PointLocation] = []
    if not _is_ordinary_at_zero(op):
        pts.append(PointLocation.zero())
    pts.extend(p for p in locate_roots(op.symbol()) if is_singular(op, p))
    if not _is_ordinary_at_zero(invert(op)):
        pts.append(PointLocation.infinity())
    return pts


def indicial_polynomial(op: ThetaOperator, p: PointLocation) -> RationalPoly:
    """Monic indicial polynomial at ``p``; its roots are the local exponents.

    At infinity the exponents refer to the local coordinate ``1/z``.
    """
    n = op.order
    if p.kind == "zero":
        q = op.Q(0)
        if q.degree != n:
            raise IndicialError("irregular singular point at 0")
        return q.monic()
    if p.kind == "infinity":
        q = op.Q(op.degree)
        if q.degree != n:
            raise IndicialError("irregular singular point at infinity")
        return q.scale_arg(-1).monic()
    f = p.minpoly
    _, data = _local_data_finite(op, f)
    return _indicial_from_local(n, data, f)


def local_exponents(op: ThetaOperator, p: PointLocation) -> tuple[Fraction, ...]:
    """Sorted multiset of (rational) local exponents at ``p``."""
    ind = indicial_polynomial(op, p)
    roots = rational_roots(ind)
    if roots is None:
        raise IndicialError(f"non-rational local exponents at {p.label}: {ind}")
    return tuple(roots)
