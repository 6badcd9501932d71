"""Local monodromy matrices around every singular point from a common basepoint."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from ..theta_ops import PointLocation, ThetaOperator, singular_points
from ..theta_ops.points import locate_roots
from .integrate import IntegrationError, TaylorIntegrator

DEFAULT_DPS = 50
DEFAULT_TOL = mpmath.mpf("1e-30")
POLYGON_SIDES = 16
SAME_POINT = mpmath.mpf("1e-12")  # approximations closer than this denote one point
BASEPOINT_CLEARANCE = mpmath.mpf("1e-6")  # relative to the smallest nonzero singular modulus


class ProductRelationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MonodromyMatrix:
    entries: mpmath.matrix = field(compare=False)
    basepoint: mpmath.mpc
    loop: tuple
    error_bound: mpmath.mpf
    point: PointLocation | None = None

    @property
    def n(self) -> int:
        return self.entries.rows

    def determinant(self):
        return mpmath.det(self.entries)


@dataclass(frozen=True)
class MonodromyResult:
    matrices: dict
    order: tuple  # points in product order, infinity last
    basepoint: mpmath.mpc
    relation_residual: mpmath.mpf
    tol: mpmath.mpf


def _avoid_set(op: ThetaOperator) -> list:
    pts = [mpmath.mpc(0)]
    pts.extend(p.approx for p in locate_roots(op.symbol()))
    return pts


def default_basepoint(op: ThetaOperator):
    """Half the smallest nonzero singular modulus, nudged above the real axis."""
    mods = [abs(p.approx) for p in locate_roots(op.symbol())]
    m = min(mods) if mods else mpmath.mpf(1)
    return mpmath.mpc(m / 2, m / 8)


def _polygon(center, radius, start_angle, sides=POLYGON_SIDES, clockwise=False):
    sgn = -1 if clockwise else 1
    return [center + radius * mpmath.expjpi(2 * (start_angle / (2 * mpmath.pi) + sgn * mpmath.mpf(k) / sides))
            for k in range(sides + 1)]


def _gap_direction(base, finite_pts):
    """Midpoint of the largest angular gap among ``arg(p - base)``."""
    if not finite_pts:
        return mpmath.mpf(0)
    angles = sorted(float(mpmath.arg(p - base)) % (2 * float(mpmath.pi)) for p in finite_pts)
    twopi = 2 * float(mpmath.pi)
    best, where = -1.0, 0.0
    for i, a in enumerate(angles):
        nxt = angles[(i + 1) % len(angles)] + (twopi if i == len(angles) - 1 else 0)
        if nxt - a > best:
            best, where = nxt - a, a + (nxt - a) / 2
    return mpmath.mpf(where)


def loop_paths(op: ThetaOperator, base, points, jitter=None):
    """Tail and circle vertices per singular point.

    Finite loops are counterclockwise ``POLYGON_SIDES``-gons of radius half the
    distance to the nearest other singular point, reached by a straight tail
    from ``base``.  The infinity loop is a clockwise polygon enclosing every
    finite singularity, reached along the largest angular gap.
    """
    avoid = _avoid_set(op)
    finite = [p for p in points if p.kind != "infinity"]
    locs = [p.approx for p in finite]
    theta_inf = _gap_direction(base, avoid)
    paths = {}
    for p, c in zip(finite, locs):
        others = [q for q in avoid if abs(q - c) > SAME_POINT * max(1, abs(c))]
        r = min(abs(q - c) for q in others) / 2 if others else abs(base - c) / 2
        r = min(r, abs(base - c) / 2)
        ang = mpmath.arg(base - c)
        entry = c + r * mpmath.expj(ang)
        circle = _polygon(c, r, ang)
        if jitter is not None:
            circle = [v + jitter * r * mpmath.expj(k * 2.399) if 0 < k < len(circle) - 1 else v
                      for k, v in enumerate(circle)]
        paths[p] = ([base, entry], circle)
    if any(p.kind == "infinity" for p in points):
        rmax = max([abs(q) for q in avoid] + [abs(base)])
        R = 2 * rmax + abs(base)
        u = mpmath.expj(theta_inf)
        proj = mpmath.re(mpmath.conj(base) * u)
        t = -proj + mpmath.sqrt(proj**2 - abs(base) ** 2 + R**2)
        entry = base + t * u
        tail = [base, entry]
        circle = _polygon(mpmath.mpc(0), R, mpmath.arg(entry), sides=2 * POLYGON_SIDES, clockwise=True)
        if jitter is not None:
            circle = [v + jitter * R * 0.05 * mpmath.expj(k * 2.399) if 0 < k < len(circle) - 1 else v
                      for k, v in enumerate(circle)]
        inf = next(p for p in points if p.kind == "infinity")
        paths[inf] = (tail, circle)
    return paths, theta_inf


def product_order(points, base, theta_inf):
    """Finite points by argument seen from ``base``, counted from the infinity tail; infinity last."""
    twopi = 2 * mpmath.pi
    finite = [p for p in points if p.kind != "infinity"]
    finite.sort(key=lambda p: float((mpmath.arg(p.approx - base) - theta_inf) % twopi))
    return finite + [p for p in points if p.kind == "infinity"]


def monodromy_matrices(
    op: ThetaOperator,
    basepoint=None,
    tol=DEFAULT_TOL,
    dps: int = DEFAULT_DPS,
    points=None,
    jitter=None,
    check_relation: bool = True,
) -> MonodromyResult:
    """Monodromy matrices in the theta basis ``(y, theta y, ...)`` at ``basepoint``."""
    with mpmath.workdps(dps):
        tol = mpmath.mpf(tol)
        if tol < mpmath.mpf("1e-30") * mpmath.mpf("0.999"):
            raise ValueError("tolerance below 1e-30 is not supported")
        pts = list(points) if points is not None else singular_points(op)
        base = mpmath.mpc(basepoint) if basepoint is not None else default_basepoint(op)
        avoid = _avoid_set(op)
        scale = min([abs(q) for q in avoid if q != 0] + [mpmath.mpf(1)])
        if min(abs(base - q) for q in avoid) < BASEPOINT_CLEARANCE * scale:
            raise ValueError("basepoint is at or too close to a singular point")
        integ = TaylorIntegrator(op, avoid, dps=dps, tol=tol)
        paths, theta_inf = loop_paths(op, base, pts, jitter=jitter)
        mats = {}
        for p in pts:
            tail, circle = paths[p]
            t_tail = integ.transport(tail)
            t_circ = integ.transport(circle)
            m = mpmath.inverse(t_tail.matrix) * t_circ.matrix * t_tail.matrix
            cond = mpmath.mnorm(t_tail.matrix, 1) * mpmath.mnorm(mpmath.inverse(t_tail.matrix), 1)
            err = (t_circ.error + 2 * t_tail.error) * cond
            mats[p] = MonodromyMatrix(m, base, tuple(tail + circle[1:] + list(reversed(tail))[1:]), err, p)
        order = tuple(product_order(pts, base, theta_inf))
        prod = mpmath.eye(op.order)
        for p in order:
            prod = mats[p].entries * prod
        resid = mpmath.mnorm(prod - mpmath.eye(op.order), 1)
        if check_relation and resid > 1000 * tol:
            raise ProductRelationError(
                f"product of local monodromies deviates from identity by {mpmath.nstr(resid, 5)}"
            )
        return MonodromyResult(mats, order, base, resid, tol)


__all__ = [
    "IntegrationError",
    "MonodromyMatrix",
    "MonodromyResult",
    "ProductRelationError",
    "default_basepoint",
    "monodromy_matrices",
]
