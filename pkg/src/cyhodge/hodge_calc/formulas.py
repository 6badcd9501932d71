"""Closed formulas for the parabolic cohomology of a rank-4 (1,1,1,1) variation.

Inputs are the counts ``A, B, C`` of boundary points of type I, II, III, the
genus ``g`` of the compact base curve and the degrees ``a = deg E^{3,0}``,
``b = deg E^{2,1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class HodgeError(ValueError):
    """Inputs violate a precondition or produce a negative dimension."""


class RouteMismatchError(ArithmeticError):
    """Two independent evaluations of the same quantity disagree."""


@dataclass(frozen=True)
class PointProfile:
    A: int
    B: int
    C: int
    g: int = 0
    residual: tuple[tuple[str, int], ...] = field(default=())  # (label, R) of non-unipotent points

    def __post_init__(self):
        if min(self.A, self.B, self.C, self.g) < 0:
            raise HodgeError("profile counts must be non-negative")
        object.__setattr__(self, "residual", tuple((str(k), int(r)) for k, r in self.residual))

    @property
    def n_sing(self) -> int:
        return self.A + self.B + self.C

    @property
    def unipotent(self) -> bool:
        return not self.residual

    def ramification(self) -> list[int]:
        return [1] * self.A + [2] * self.B + [3] * self.C + [r for _, r in self.residual]


@dataclass(frozen=True)
class HodgeDegrees:
    a: int
    b: int

    @property
    def degrees(self) -> tuple[int, int, int, int]:
        """Degrees of ``E^{3,0}, E^{2,1}, E^{1,2}, E^{0,3}``."""
        return (self.a, self.b, -self.b, -self.a)


@dataclass(frozen=True)
class HodgeNumbers:
    h40: int
    h31: int
    h22: int
    h13: int
    h04: int
    dim: int

    def __post_init__(self):
        if self.h40 != self.h04 or self.h31 != self.h13:
            raise HodgeError("Hodge numbers violate symmetry")
        if self.dim != self.h40 + self.h31 + self.h22 + self.h13 + self.h04:
            raise HodgeError("dimension does not match the Hodge numbers")
        if min(self.h40, self.h31, self.h22) < 0:
            raise HodgeError("negative Hodge number")

    @classmethod
    def from_half(cls, h40: int, h31: int, h22: int) -> HodgeNumbers:
        return cls(h40, h31, h22, h31, h40, 2 * h40 + 2 * h31 + h22)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.h40, self.h31, self.h22, self.h13, self.h04)


def dim_h1_euler(ramification, rank: int = 4, g: int = 0) -> int:
    """``sum R(p) + (2g - 2) rank``; also valid with non-unipotent points."""
    if isinstance(ramification, PointProfile):
        g = ramification.g
        ramification = ramification.ramification()
    h = sum(ramification) + (2 * g - 2) * rank
    if h < 0:
        raise HodgeError(f"negative h^1 = {h}: invalid profile")
    return h


def dim_h1_profile(p: PointProfile) -> int:
    """``A + 2B + 3C + 8(g - 1)`` for unipotent profiles."""
    if p.residual:
        raise HodgeError("profile has non-unipotent points")
    h = p.A + 2 * p.B + 3 * p.C + 8 * (p.g - 1)
    if h < 0:
        raise HodgeError(f"negative h^1 = {h}: invalid profile")
    return h


def hodge_numbers(d: HodgeDegrees, p: PointProfile) -> HodgeNumbers:
    if p.residual:
        raise HodgeError("Hodge-number formulas need a unipotent profile")
    if d.a < 1:
        raise HodgeError(f"a = {d.a} < 1: deg E^(3,0) must be positive")
    A, B, C, g, a, b = p.A, p.B, p.C, p.g, d.a, d.b
    vals = {
        "h40 = a-1+g": a - 1 + g,
        "h31 = B+C+b-a-2+2g": B + C + b - a - 2 + 2 * g,
        "h22 = A+C-2b-2+2g": A + C - 2 * b - 2 + 2 * g,
    }
    for formula, v in vals.items():
        if v < 0:
            raise HodgeError(f"{formula} gives {v} < 0: profile and degrees are inconsistent")
    h40, h31, h22 = vals.values()
    out = HodgeNumbers.from_half(h40, h31, h22)
    if out.dim != dim_h1_profile(p):
        raise RouteMismatchError(f"Hodge numbers sum to {out.dim}, dimension formula gives {dim_h1_profile(p)}")
    return out


@dataclass(frozen=True)
class L2DegreeTable:
    # Omega^0 column
    e30_minus_II_III: int
    e21_minus_I_III: int
    e12_minus_II: int
    e03: int
    # Omega^1 column
    e30_omega: int
    e21_omega: int
    e12_omega: int
    e03_III_omega: int
    genus: int = 0

    @property
    def h40(self) -> int:
        # positivity kills H^1, Riemann-Roch on a line bundle of this degree
        return self.e30_omega + 1 - self.genus

    @property
    def cokernel_differences(self) -> tuple[int, int, int]:
        """Degree differences of the three theta-maps between the columns."""
        return (
            self.e21_omega - self.e30_minus_II_III,
            self.e12_omega - self.e21_minus_I_III,
            self.e03_III_omega - self.e12_minus_II,
        )

    def rows(self) -> list[tuple[str, int, str, int]]:
        return [
            ("E30(-II-III)", self.e30_minus_II_III, "E30 x Omega1", self.e30_omega),
            ("E21(-I-III)", self.e21_minus_I_III, "E21 x Omega1", self.e21_omega),
            ("E12(-II)", self.e12_minus_II, "E12 x Omega1", self.e12_omega),
            ("E03", self.e03, "E03(III) x Omega1", self.e03_III_omega),
        ]


def l2_degree_table(d: HodgeDegrees, p: PointProfile, check: bool = True) -> L2DegreeTable:
    if p.residual:
        raise HodgeError("degree table needs a unipotent profile")
    A, B, C, g, a, b = p.A, p.B, p.C, p.g, d.a, d.b
    k = 2 * g - 2
    t = L2DegreeTable(
        e30_minus_II_III=a - B - C,
        e21_minus_I_III=b - A - C,
        e12_minus_II=-b - B,
        e03=-a,
        e30_omega=a + k,
        e21_omega=b + k,
        e12_omega=-b + k,
        e03_III_omega=-a + C + k,
        genus=g,
    )
    if check:
        h = hodge_numbers(d, p)
        if t.cokernel_differences != (h.h31, h.h22, h.h13) or t.h40 != h.h40:
            raise RouteMismatchError(
                f"degree table gives {t.cokernel_differences}, theorem gives {(h.h31, h.h22, h.h13)}"
            )
    return t


def solve_ab_corollary(dim_h: int, p: PointProfile) -> HodgeDegrees:
    """``a = 1`` and ``b = (A + C - 2 - dim H) / 2`` when ``dim H <= 1`` and ``g = 0``."""
    if p.residual:
        raise HodgeError("corollary needs a unipotent profile")
    if p.g != 0:
        raise HodgeError("corollary needs genus 0")
    if dim_h > 1:
        raise HodgeError(f"dim H = {dim_h} > 1: corollary does not apply")
    num = p.A + p.C - 2 - dim_h
    if num < 0 or num % 2:
        raise HodgeError(f"A + C - 2 - dim H = {num} is not a non-negative even number")
    return HodgeDegrees(1, num // 2)


def propagate_ab_pullback(d: HodgeDegrees, e: int, all_points_unipotent: bool) -> HodgeDegrees:
    if e < 1:
        raise HodgeError("pullback degree must be positive")
    if not all_points_unipotent:
        raise HodgeError("degrees only scale under base change of a unipotent system")
    return HodgeDegrees(e * d.a, e * d.b)


def yukawa_zero_count(n_sing: int, g: int, a: int) -> int:
    z = 3 * (n_sing - 2 + 2 * g) - 2 * a
    if z < 0:
        raise HodgeError(f"negative Yukawa zero count {z}")
    return z


def symmetry_forced_hodge_numbers(dim_h: int) -> HodgeNumbers | None:
    """Hodge numbers fixed by ``h^{p,q} = h^{q,p}`` alone (``dim H <= 1``)."""
    if dim_h == 0:
        return HodgeNumbers.from_half(0, 0, 0)
    if dim_h == 1:
        return HodgeNumbers.from_half(0, 0, 1)
    return None
