"""Jordan data of local monodromy and the I / II / III classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import mpmath

from .. import linalg
from .numeric import (
    frob_norm,
    matpow,
    nilpotent_exp_series,
    nilpotent_log_series,
    numeric_rank,
)


class NotUnipotentError(ValueError):
    pass


class UnipotencyVerificationError(ArithmeticError):
    pass


# -- Jordan data ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class JordanBlock:
    """Block of size ``size`` for the eigenvalue ``exp(2 pi i rotation / order)``."""

    order: int
    rotation: int
    size: int

    def __post_init__(self):
        if self.order < 1 or self.size < 1:
            raise ValueError("block order and size must be positive")
        g = gcd(self.rotation % self.order, self.order)
        r = (self.rotation % self.order) // g
        k = self.order // g
        object.__setattr__(self, "order", k)
        object.__setattr__(self, "rotation", r)

    @classmethod
    def from_class(cls, c: Fraction, size: int) -> JordanBlock:
        c = Fraction(c) % 1
        return cls(c.denominator, c.numerator, size)

    @property
    def eigenvalue_class(self) -> Fraction:
        return Fraction(self.rotation, self.order)

    @property
    def unipotent(self) -> bool:
        return self.order == 1

    def eigenvalue(self):
        return mpmath.expjpi(2 * mpmath.mpf(self.rotation) / self.order)


@dataclass(frozen=True)
class LocalMonodromyDatum:
    blocks: tuple[JordanBlock, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @classmethod
    def of(cls, blocks: Iterable) -> LocalMonodromyDatum:
        return cls(tuple(b if isinstance(b, JordanBlock) else JordanBlock(*b) for b in blocks))

    @property
    def rank(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def is_unipotent(self) -> bool:
        return all(b.unipotent for b in self.blocks)

    @property
    def is_semisimple(self) -> bool:
        return all(b.size == 1 for b in self.blocks)

    @property
    def is_trivial(self) -> bool:
        return self.is_unipotent and self.is_semisimple

    @property
    def unipotency_order(self) -> int:
        return lcm(*(b.order for b in self.blocks)) if self.blocks else 1

    @property
    def invariant_rank_defect(self) -> int:
        """``rank - dim(invariants)``: one invariant line per unipotent block."""
        return sum(b.size - (1 if b.unipotent else 0) for b in self.blocks)

    def unipotent_partition(self) -> tuple[int, ...]:
        return tuple(sorted((b.size for b in self.blocks if b.unipotent), reverse=True))

    def __str__(self) -> str:
        parts = []
        for b in self.blocks:
            ev = "1" if b.unipotent else f"e(2pi i*{b.rotation}/{b.order})"
            parts.append(f"J{b.size}({ev})")
        return " + ".join(parts)


def power_local_datum(d: LocalMonodromyDatum, e: int) -> LocalMonodromyDatum:
    """Datum of ``T**e``: eigenvalue classes multiply by ``e``, block sizes persist."""
    if e < 1:
        raise ValueError("exponent must be positive")
    return LocalMonodromyDatum(tuple(JordanBlock.from_class(b.eigenvalue_class * e, b.size) for b in d.blocks))


def datum_from_exponents(exponents: Sequence[Fraction], sizes: dict[Fraction, Sequence[int]]) -> LocalMonodromyDatum:
    """Assemble a datum from exponent classes and per-class Jordan sizes."""
    blocks = []
    counts = Counter(Fraction(x) % 1 for x in exponents)
    for c, mult in counts.items():
        ss = list(sizes[c])
        if sum(ss) != mult:
            raise ValueError(f"block sizes {ss} do not match multiplicity {mult} of class {c}")
        blocks.extend(JordanBlock.from_class(c, s) for s in ss)
    return LocalMonodromyDatum(tuple(blocks))


# -- point types ------------------------------------------------------------------


@dataclass(frozen=True)
class PointType:
    kind: str  # I, II, III, FiniteOrder, QuasiUnipotent, Regular, Inconsistent
    order: int | None = None
    datum: LocalMonodromyDatum | None = None

    def __str__(self) -> str:
        if self.kind == "FiniteOrder":
            return f"FiniteOrder({self.order})"
        if self.kind == "QuasiUnipotent":
            return f"QuasiUnipotent({self.datum})"
        return self.kind

    @property
    def is_unipotent_boundary(self) -> bool:
        return self.kind in ("I", "II", "III")

    @property
    def weight(self) -> int:
        """Ramification contribution of a unipotent type."""
        return {"I": 1, "II": 2, "III": 3, "Regular": 0}[self.kind]


TYPE_I = PointType("I")
TYPE_II = PointType("II")
TYPE_III = PointType("III")
REGULAR = PointType("Regular")
INCONSISTENT = PointType("Inconsistent")

_PARTITION_TYPES = {
    (1, 1, 1, 1): REGULAR,
    (2, 1, 1): TYPE_I,
    (2, 2): TYPE_II,
    (3, 1): INCONSISTENT,
    (4,): TYPE_III,
}


def type_from_datum(d: LocalMonodromyDatum) -> PointType:
    if d.is_unipotent:
        part = d.unipotent_partition()
        if part in _PARTITION_TYPES:
            return _PARTITION_TYPES[part]
        # other ranks: ranks of N, N^2, N^3
        r = [sum(max(s - j, 0) for s in part) for j in (1, 2, 3)]
        return _type_from_ranks(*r)
    if d.is_semisimple:
        return PointType("FiniteOrder", d.unipotency_order, d)
    return PointType("QuasiUnipotent", d.unipotency_order, d)


def _type_from_ranks(r1: int, r2: int, r3: int) -> PointType:
    if r3 != 0:
        return TYPE_III if (r1, r2, r3) == (3, 2, 1) else INCONSISTENT
    if r2 != 0:
        return INCONSISTENT
    return {0: REGULAR, 1: TYPE_I, 2: TYPE_II}.get(r1, INCONSISTENT)


# -- nilpotent endomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class NilpotentEndo:
    """Nilpotent matrix, exact (Fractions) or numeric (mpmath matrix)."""

    entries: object
    exact: bool
    reference_norm: object = None

    @classmethod
    def from_rows(cls, rows) -> NilpotentEndo:
        m = linalg.to_fractions(rows)
        return cls(m, True)

    @property
    def n(self) -> int:
        return len(self.entries) if self.exact else self.entries.rows

    def power_ranks(self) -> tuple[int, ...]:
        """Ranks of ``N, N^2, ..., N^(n-1)``."""
        out = []
        if self.exact:
            p = linalg.identity(self.n)
            for _ in range(1, self.n):
                p = linalg.matmul(p, self.entries)
                out.append(linalg.rank(p))
        else:
            ref = self.reference_norm if self.reference_norm is not None else frob_norm(self.entries)
            p = mpmath.eye(self.n)
            for k in range(1, self.n):
                p = p * self.entries
                out.append(numeric_rank(p, reference=ref**k if ref else None))
        return tuple(out)


def classify_point(N: NilpotentEndo) -> PointType:
    """Type from the ranks of ``N, N^2, N^3`` (rank-4 systems)."""
    ranks = N.power_ranks()
    ranks = tuple(ranks) + (0,) * (3 - len(ranks))
    if N.n > 4 and any(ranks[3:]):
        return INCONSISTENT
    return _type_from_ranks(*ranks[:3])


def _unipotent_check(T, tol) -> None:
    n = T.rows
    x = T - mpmath.eye(n)
    scale = max(frob_norm(T), 1)
    if frob_norm(matpow(x, n)) > tol * scale**n * 10**6:
        raise NotUnipotentError("matrix is not unipotent within tolerance")


def nilpotent_log(T, tol=mpmath.mpf("1e-30")) -> NilpotentEndo:
    """``N = log T`` for unipotent ``T`` (an mpmath matrix or ``MonodromyMatrix``)."""
    m = getattr(T, "entries", T)
    _unipotent_check(m, mpmath.mpf(tol))
    N = nilpotent_log_series(m)
    return NilpotentEndo(N, False, reference_norm=max(frob_norm(m), 1))


def exp_nilpotent(N: NilpotentEndo):
    return nilpotent_exp_series(N.entries)


def unipotency_order(T, exponents: Sequence[Fraction], tol=mpmath.mpf("1e-30")) -> int:
    """``lcm`` of exponent denominators; checks that ``T**k`` is unipotent."""
    k = lcm(*(Fraction(x).denominator for x in exponents)) if exponents else 1
    m = getattr(T, "entries", T)
    try:
        _unipotent_check(matpow(m, k), mpmath.mpf(tol))
    except NotUnipotentError as exc:
        raise UnipotencyVerificationError(f"T^{k} is not unipotent") from exc
    return k


def invariant_rank_defect(T) -> int:
    """Numeric rank of ``T - I``."""
    m = getattr(T, "entries", T)
    return numeric_rank(m - mpmath.eye(m.rows), reference=max(frob_norm(m), 1))


def datum_from_matrix(T, exponents: Sequence[Fraction]) -> LocalMonodromyDatum:
    """Jordan datum of a numeric monodromy matrix.

    Eigenvalue classes come from the exact exponents; the block sizes of each
    class follow from the kernel dimensions of ``(T - lambda)^j``.
    """
    m = getattr(T, "entries", T)
    n = m.rows
    ref = max(frob_norm(m), 1)
    sizes: dict[Fraction, list[int]] = {}
    counts = Counter(Fraction(x) % 1 for x in exponents)
    if sum(counts.values()) != n:
        raise ValueError("number of exponents does not match the matrix size")
    for c, mult in counts.items():
        lam = mpmath.expjpi(2 * mpmath.mpf(c.numerator) / c.denominator)
        x = m - lam * mpmath.eye(n)
        kdims = [0]
        p = mpmath.eye(n)
        for j in range(1, mult + 1):
            p = p * x
            kdims.append(n - numeric_rank(p, reference=(ref + 1) ** j))
        if kdims[-1] != mult:
            raise UnipotencyVerificationError(
                f"generalized eigenspace of class {c} has dimension {kdims[-1]}, expected {mult}"
            )
        # number of blocks of size >= j is kdims[j] - kdims[j-1]
        ge = [kdims[j] - kdims[j - 1] for j in range(1, mult + 1)] + [0]
        ss = []
        for j in range(1, mult + 1):
            ss.extend([j] * (ge[j - 1] - ge[j]))
        sizes[c] = ss
    return datum_from_exponents(exponents, sizes)


# -- symbolic data for hypergeometric operators --------------------------------------


def hypergeometric_data(exponents_inf: Sequence[Fraction], exponents_conifold: Sequence[Fraction]):
    """Levelt-type data of ``theta^n - C z prod(theta + a_i)``.

    Returns ``(datum_at_0, datum_at_conifold, datum_at_infinity)``.  At 0 there
    is a single unipotent block; at infinity one block per exponent class with
    the class multiplicity as its size; the conifold monodromy is a
    pseudo-reflection whose special exponent is the one outside ``0..n-2``.
    """
    n = len(exponents_inf)
    at0 = LocalMonodromyDatum((JordanBlock(1, 0, n),))
    counts = Counter(Fraction(a) % 1 for a in exponents_inf)
    atinf = LocalMonodromyDatum(tuple(JordanBlock.from_class(c, m) for c, m in counts.items()))
    rest = Counter(Fraction(x) for x in exponents_conifold)
    for k in range(n - 1):
        if rest[Fraction(k)] == 0:
            raise ValueError("conifold exponents do not contain 0..n-2")
        rest[Fraction(k)] -= 1
    (gamma,) = list(rest.elements())
    if gamma.denominator == 1:
        blocks = [JordanBlock(1, 0, 2)] + [JordanBlock(1, 0, 1)] * (n - 2)
    else:
        blocks = [JordanBlock.from_class(gamma, 1)] + [JordanBlock(1, 0, 1)] * (n - 1)
    return at0, LocalMonodromyDatum(tuple(blocks)), atinf
