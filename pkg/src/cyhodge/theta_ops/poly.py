"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial ``sum(coeffs[i] * var**i)``.

    Trailing zeros are stripped on construction, so ``coeffs == ()`` is the
    zero polynomial and ``coeffs[-1]`` is always the leading coefficient.
    """

    coeffs: tuple[Fraction, ...] = ()
    var: str = "T"

    def __post_init__(self):
        cs = [_as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, c, var: str = "T") -> RationalPoly:
        return cls((c,), var)

    @classmethod
    def gen(cls, var: str = "T") -> RationalPoly:
        return cls((0, 1), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "T") -> RationalPoly:
        p = cls((1,), var)
        for r in roots:
            p = p * cls((-_as_fraction(r), 1), var)
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def with_var(self, var: str) -> RationalPoly:
        return RationalPoly(self.coeffs, var)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> RationalPoly:
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly((other,), self.var)

    def __add__(self, other) -> RationalPoly:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self) -> RationalPoly:
        return RationalPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other) -> RationalPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RationalPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> RationalPoly:
        if not isinstance(other, RationalPoly):
            c = _as_fraction(other)
            return RationalPoly(tuple(c * a for a in self.coeffs), self.var)
        if not self.coeffs or not other.coeffs:
            return RationalPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RationalPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = RationalPoly((1,), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return RationalPoly((), self.var), self
        quot = [Fraction(0)] * dq
        lead = other.leading
        for i in range(dq - 1, -1, -1):
            c = rem[i + other.degree] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return RationalPoly(tuple(quot), self.var), RationalPoly(tuple(rem), self.var)

    def __mod__(self, other: RationalPoly) -> RationalPoly:
        return self.divmod(other)[1]

    def __floordiv__(self, other: RationalPoly) -> RationalPoly:
        return self.divmod(other)[0]

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + _to_num(c, x)
        return acc

    def derivative(self) -> RationalPoly:
        return RationalPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def shift(self, c) -> RationalPoly:
        """Return ``p(x + c)`` (Taylor shift, exact)."""
        c = _as_fraction(c)
        a = list(self.coeffs)
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        return RationalPoly(tuple(a), self.var)

    def scale_arg(self, c) -> RationalPoly:
        """Return ``p(c * x)``."""
        c = _as_fraction(c)
        return RationalPoly(tuple(a * c**i for i, a in enumerate(self.coeffs)), self.var)

    def compose_power(self, e: int) -> RationalPoly:
        """Return ``p(x**e)``."""
        out = [Fraction(0)] * (e * self.degree + 1 if self.coeffs else 0)
        for i, a in enumerate(self.coeffs):
            out[e * i] = a
        return RationalPoly(tuple(out), self.var)

    def reversed(self, n: int | None = None) -> RationalPoly:
        """Return ``x**n * p(1/x)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        if n < self.degree:
            raise ValueError("reversal length below degree")
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return RationalPoly(tuple(reversed(cs)), self.var)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (``-1`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    # -- normalization ---------------------------------------------------

    def denominator_lcm(self) -> int:
        return lcm(1, *(c.denominator for c in self.coeffs))

    def numerator_gcd(self) -> int:
        return gcd(*(c.numerator for c in self.coeffs)) if self.coeffs else 0

    def monic(self) -> RationalPoly:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self * (1 / self.leading)

    def primitive(self) -> RationalPoly:
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        p = self * self.denominator_lcm()
        g = p.numerator_gcd()
        p = p * Fraction(1, g)
        return -p if p.leading < 0 else p

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self.coeffs, self.var)

    def to_sympy(self, symbol=None):
        x = symbol if symbol is not None else sympy.Symbol(self.var)
        return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in self.coeffs])) or [0], x, domain="QQ")

    @classmethod
    def from_sympy(cls, p, var: str = "T") -> RationalPoly:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        return cls(tuple(cs), var)


def _to_num(c: Fraction, like):
    # mpmath / float evaluation: build the coefficient in the target's type
    ctx = getattr(like, "context", None)
    if ctx is not None:
        return ctx.mpf(c.numerator) / c.denominator
    return c.numerator / c.denominator


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(coeffs: Sequence[Fraction], var: str) -> str:
    """Render in the operator grammar, highest degree first."""
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# -- factorization over Q (delegated to sympy) ---------------------------


def factor_over_q(p: RationalPoly) -> list[tuple[RationalPoly, int]]:
    """Irreducible monic factors of ``p`` over Q with multiplicities."""
    if p.degree < 1:
        return []
    _, factors = p.to_sympy().factor_list()
    out = [(RationalPoly.from_sympy(f, p.var).monic(), int(m)) for f, m in factors]
    out.sort(key=lambda fm: (fm[0].degree, [float(c) for c in fm[0].coeffs]))
    return out


def rational_roots(p: RationalPoly) -> list[Fraction] | None:
    """All roots with multiplicity, sorted, if they are all rational; else None."""
    roots: list[Fraction] = []
    for f, m in factor_over_q(p):
        if f.degree != 1:
            return None
        roots.extend([-f.coeffs[0] / f.coeffs[1]] * m)
    return sorted(roots)


# -- arithmetic in Q[x]/(f) for irreducible f -----------------------------


def nf_reduce(a: RationalPoly, f: RationalPoly) -> RationalPoly:
    return a % f if a.degree >= f.degree else a


def nf_mul(a: RationalPoly, b: RationalPoly, f: RationalPoly) -> RationalPoly:
    return nf_reduce(a * b, f)


def nf_inverse(a: RationalPoly, f: RationalPoly) -> RationalPoly:
    """Inverse of ``a`` modulo the irreducible polynomial ``f``."""
    r0, r1 = f, nf_reduce(a, f)
    s0, s1 = RationalPoly((), f.var), RationalPoly((1,), f.var)
    if r1.is_zero():
        raise ZeroDivisionError("element is zero in the number field")
    while r1.degree > 0:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        if r1.is_zero():
            raise ZeroDivisionError("modulus is not irreducible")
    return nf_reduce(s1 * (1 / r1.coeffs[0]), f)
