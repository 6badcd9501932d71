"""Point profile and Hodge numbers of a (pulled-back) operator.

Local monodromy data are obtained symbolically where the exponents or the
hypergeometric shape decide them, numerically otherwise, and then carried to
a pullback ``z = w^e`` by taking powers at 0 and infinity.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import mpmath

from ..hodge_calc import (
    HodgeDegrees,
    HodgeError,
    HodgeNumbers,
    L2DegreeTable,
    PointProfile,
    RouteMismatchError,
    dim_h1_euler,
    dim_h1_profile,
    hodge_numbers,
    l2_degree_table,
    propagate_ab_pullback,
    solve_ab_corollary,
    symmetry_forced_hodge_numbers,
    yukawa_zero_count,
)
from ..monodromy_engine import (
    INCONSISTENT,
    REGULAR,
    JordanBlock,
    LocalMonodromyDatum,
    PointType,
    ProductRelationError,
    RankAmbiguityError,
    UnipotencyVerificationError,
    datum_from_matrix,
    hypergeometric_data,
    monodromy_matrices,
    power_local_datum,
    type_from_datum,
)
from ..monodromy_engine.integrate import IntegrationError
from ..theta_ops import (
    IndicialError,
    PointLocation,
    ThetaOperator,
    local_exponents,
    pullback,
    rational_roots,
    singular_points,
)

MODES = ("auto", "numeric", "symbolic")
PRECISION_ENV = "CYHODGE_PRECISION"
DEFAULT_DPS = 50
DEFAULT_TOL = "1e-30"

STATUS_OK = "ok"
STATUS_AB_UNDETERMINED = "ab-undetermined"
STATUS_AMBIGUOUS = "ambiguous"
STATUS_UNDETERMINED = "type-undetermined"
STATUS_INCONSISTENT = "inconsistent"


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_DPS
    try:
        dps = int(raw)
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if dps < 30:
        raise ValueError(f"{PRECISION_ENV} must be at least 30")
    return dps


@dataclass(frozen=True)
class SingularPointRecord:
    location: PointLocation
    exponents: tuple[Fraction, ...]
    datum: LocalMonodromyDatum | None
    type: PointType | None
    R: int | None
    source: str  # symbolic, numeric, base-change
    error_bound: float | None = None

    @property
    def in_boundary(self) -> bool:
        """Part of the discriminant D (apparent singularities are not)."""
        return self.type is None or self.type.kind != "Regular"


@dataclass(frozen=True)
class ABResult:
    a: int
    b: int
    provenance: str  # corollary, base-change, asserted
    source_e: int | None = None


@dataclass(frozen=True)
class HodgeReport:
    entry_id: str | None
    operator_text: str
    pullback: int
    mode: str
    points: tuple[SingularPointRecord, ...]
    profile: PointProfile | None
    h1_euler: int | None
    h1_profile: int | None
    ab: ABResult | None
    hodge: HodgeNumbers | None
    hodge_provenance: str | None
    yukawa_zeros: int | None
    l2_table: L2DegreeTable | None
    status: str
    flags: tuple[tuple[str, bool], ...] = ()
    notes: tuple[str, ...] = ()
    product_residual: float | None = None

    @property
    def h1(self) -> int | None:
        return self.h1_euler

    @property
    def exit_code(self) -> int:
        if self.status == STATUS_INCONSISTENT or not all(ok for _, ok in self.flags):
            return 1
        return 0 if self.status == STATUS_OK else 2

    def flag(self, name: str) -> bool | None:
        return dict(self.flags).get(name)

    def with_notes(self, *extra: str) -> HodgeReport:
        return replace(self, notes=self.notes + tuple(extra))


# -- base data ------------------------------------------------------------------------------


def hypergeometric_shape(op: ThetaOperator) -> bool:
    """``theta^n - C z prod(theta + a_i)`` with rational ``a_i``."""
    n = op.order
    if op.degree != 1 or op.Q(0).coeffs != (0,) * n + (1,):
        return False
    q1 = op.Q(1)
    return q1.degree == n and rational_roots(q1) is not None


def symbolic_datum(op: ThetaOperator, p: PointLocation, exps, hyper) -> LocalMonodromyDatum | None:
    """Jordan datum when it follows without continuation, else None."""
    n = op.order
    if hyper is not None:
        at0, atc, atinf = hyper
        return {"zero": at0, "infinity": atinf}.get(p.kind, atc)
    classes = Counter(Fraction(x) % 1 for x in exps)
    if len(set(exps)) == 1:
        # a single exponent of full multiplicity forces log^{n-1}: one block
        return LocalMonodromyDatum((JordanBlock.from_class(exps[0], n),))
    if all(m == 1 for m in classes.values()):
        return LocalMonodromyDatum(tuple(JordanBlock.from_class(c, 1) for c in classes))
    return None


def _hyper_data(op: ThetaOperator, points, exps_by_point):
    if not hypergeometric_shape(op):
        return None
    conifold = [p for p in points if p.kind == "finite"]
    if len(conifold) != 1:
        return None
    inf = next(p for p in points if p.kind == "infinity")
    return hypergeometric_data(exps_by_point[inf], exps_by_point[conifold[0]])


@dataclass
class _NumericRun:
    data: dict
    errors: dict
    residual: float


def _numeric_data(op, points, exps_by_point, dps, tol, basepoint=None) -> _NumericRun:
    res = monodromy_matrices(op, basepoint=basepoint, tol=tol, dps=dps, points=points)
    data, errors = {}, {}
    with mpmath.workdps(dps):
        for p in points:
            m = res.matrices[p]
            data[p] = datum_from_matrix(m, exps_by_point[p])
            errors[p] = float(m.error_bound)
    return _NumericRun(data, errors, float(res.relation_residual))


@dataclass(frozen=True)
class BaseAnalysis:
    """Local data of an operator before any pullback."""

    operator: ThetaOperator
    points: tuple[PointLocation, ...]
    exponents: dict = field(compare=False)
    data: dict = field(compare=False)  # PointLocation -> datum or None
    sources: dict = field(compare=False)
    errors: dict = field(compare=False)
    flags: tuple[tuple[str, bool], ...] = ()
    notes: tuple[str, ...] = ()
    status: str = STATUS_OK
    product_residual: float | None = None


def analyze_base(op: ThetaOperator, mode: str = "auto", dps: int | None = None, tol=DEFAULT_TOL,
                 verify: bool = False, basepoint=None) -> BaseAnalysis:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    dps = dps or default_precision()
    pts = tuple(singular_points(op))
    exps = {p: local_exponents(op, p) for p in pts}
    hyper = _hyper_data(op, pts, exps)
    data, sources, errors = {}, {}, {}
    flags, notes = [], []
    status = STATUS_OK
    residual = None
    if mode != "numeric":
        for p in pts:
            d = symbolic_datum(op, p, exps[p], hyper)
            data[p] = d
            sources[p] = "symbolic" if d is not None else None
    need_numeric = mode == "numeric" or (mode == "auto" and (verify or any(d is None for d in data.values())))
    if need_numeric:
        try:
            run = _numeric_data(op, list(pts), exps, dps, tol, basepoint)
        except RankAmbiguityError as exc:
            notes.append(f"numeric rank ambiguous: {exc}")
            status = STATUS_AMBIGUOUS
        except ProductRelationError as exc:
            notes.append(str(exc))
            flags.append(("product-relation", False))
            status = STATUS_INCONSISTENT
        except (IntegrationError, UnipotencyVerificationError) as exc:
            notes.append(f"numeric continuation failed: {exc}")
            status = STATUS_AMBIGUOUS
        else:
            residual = run.residual
            flags.append(("product-relation", True))
            errors.update(run.errors)
            for p in pts:
                sym = data.get(p)
                if sym is not None and sym != run.data[p]:
                    flags.append((f"symbolic-vs-numeric:{p.label}", False))
                    notes.append(f"symbolic datum {sym} disagrees with numeric {run.data[p]} at {p.label}")
                if sym is None:
                    data[p] = run.data[p]
                    sources[p] = "numeric"
            if verify and mode == "auto":
                flags.append(("symbolic-vs-numeric", all(ok for k, ok in flags if k.startswith("symbolic-vs"))))
    if status == STATUS_OK and any(d is None for d in data.values()):
        status = STATUS_UNDETERMINED
        notes.append("some local monodromy data are not decided symbolically; use numeric mode")
    for p in pts:
        data.setdefault(p, None)
        sources.setdefault(p, None)
    return BaseAnalysis(op, pts, exps, data, sources, errors, tuple(flags), tuple(notes), status, residual)


# -- pullback propagation ----------------------------------------------------------------------


def preimage_base_point(q: PointLocation, base_points, e: int) -> PointLocation | None:
    """Base point ``p`` with ``q^e = p``."""
    if q.kind in ("zero", "infinity"):
        return next((p for p in base_points if p.kind == q.kind), None)
    zq = q.approx**e
    best = None
    for p in base_points:
        if p.kind != "finite":
            continue
        if not (p.minpoly.compose_power(e) % q.minpoly).is_zero():
            continue
        if best is None or abs(p.approx - zq) < abs(best.approx - zq):
            best = p
    return best


def _record(p, exps, datum, source, error=None) -> SingularPointRecord:
    if datum is None:
        return SingularPointRecord(p, exps, None, None, None, source or "undetermined", error)
    t = type_from_datum(datum)
    return SingularPointRecord(p, exps, datum, t, datum.invariant_rank_defect, source, error)


def _classes_match(datum: LocalMonodromyDatum, exps) -> bool:
    want = Counter(Fraction(x) % 1 for x in exps)
    have = Counter()
    for b in datum.blocks:
        have[b.eigenvalue_class] += b.size
    return want == have


def propagate(base: BaseAnalysis, e: int) -> tuple[ThetaOperator, list[SingularPointRecord], list]:
    """Records for ``pullback(base.operator, e)`` from the base data."""
    op = pullback(base.operator, e)
    flags = []
    recs = []
    for q in singular_points(op):
        exps = local_exponents(op, q)
        p = preimage_base_point(q, base.points, e)
        if p is None:
            # preimage of a regular point of the base: stays regular
            recs.append(_record(q, exps, LocalMonodromyDatum(tuple(JordanBlock(1, 0, 1) for _ in exps)), "base-change"))
            continue
        d = base.data[p]
        if d is not None and q.kind in ("zero", "infinity"):
            d = power_local_datum(d, e)
        src = base.sources[p] if e == 1 else "base-change"
        rec = _record(q, exps, d, src, base.errors.get(p))
        if d is not None and not _classes_match(d, exps):
            flags.append((f"exponent-classes:{q.label}", False))
        recs.append(rec)
    return op, recs, flags


def _numeric_records(op: ThetaOperator, dps, tol, basepoint=None):
    pts = singular_points(op)
    exps = {p: local_exponents(op, p) for p in pts}
    run = _numeric_data(op, pts, exps, dps, tol, basepoint)
    recs = [_record(p, exps[p], run.data[p], "numeric", run.errors[p]) for p in pts]
    return recs, run.residual


# -- main entry point ---------------------------------------------------------------------------


def profile_from_records(records) -> PointProfile:
    counts = Counter()
    residual = []
    for r in records:
        if r.type is None or not r.in_boundary:
            continue
        if r.type.kind in ("I", "II", "III"):
            counts[r.type.kind] += 1
        else:
            residual.append((r.location.label, r.R))
    return PointProfile(counts["I"], counts["II"], counts["III"], 0, tuple(residual))


class _Session:
    """Memoizes base analyses and reports across the recursive (a, b) search."""

    def __init__(self, mode, dps, tol, verify, basepoint):
        self.mode, self.dps, self.tol, self.verify, self.basepoint = mode, dps, tol, verify, basepoint
        self._base = {}
        self._reports = {}

    def base(self, op: ThetaOperator) -> BaseAnalysis:
        key = str(op)
        if key not in self._base:
            self._base[key] = analyze_base(op, self.mode, self.dps, self.tol, self.verify, self.basepoint)
        return self._base[key]

    def report(self, op: ThetaOperator, e: int, entry_id=None, asserted=None) -> HodgeReport:
        key = (str(op), e, asserted)
        if key not in self._reports:
            self._reports[key] = self._analyze(op, e, entry_id, asserted)
        return self._reports[key]

    def _analyze(self, base_op, e, entry_id, asserted) -> HodgeReport:
        flags: list[tuple[str, bool]] = []
        notes: list[str] = []
        residual = None
        status = STATUS_OK
        if self.mode == "numeric":
            op = pullback(base_op, e)
            try:
                records, residual = _numeric_records(op, self.dps, self.tol, self.basepoint)
                flags.append(("product-relation", True))
            except RankAmbiguityError as exc:
                return self._partial(base_op, e, entry_id, STATUS_AMBIGUOUS, [f"numeric rank ambiguous: {exc}"], [])
            except ProductRelationError as exc:
                return self._partial(base_op, e, entry_id, STATUS_INCONSISTENT, [str(exc)], [("product-relation", False)])
            except (IntegrationError, UnipotencyVerificationError) as exc:
                return self._partial(base_op, e, entry_id, STATUS_AMBIGUOUS, [f"numeric continuation failed: {exc}"], [])
        else:
            base = self.base(base_op)
            flags.extend(base.flags)
            notes.extend(base.notes)
            residual = base.product_residual
            if base.status not in (STATUS_OK, STATUS_UNDETERMINED):
                return self._partial(base_op, e, entry_id, base.status, notes, flags)
            op, records, pflags = propagate(base, e)
            flags.extend(pflags)
        records = tuple(records)
        if any(r.type is None for r in records):
            return self._partial(base_op, e, entry_id, STATUS_UNDETERMINED, notes, flags, records, residual)
        inconsistent = [r for r in records if r.type == INCONSISTENT]
        flags.append(("no-inconsistent-type", not inconsistent))
        if inconsistent:
            notes.append("a point has N^2 != 0 and N^3 = 0, impossible for this Hodge type")
            return self._partial(base_op, e, entry_id, STATUS_INCONSISTENT, notes, flags, records, residual)
        for r in records:
            if r.type == REGULAR:
                notes.append(f"{r.location.label}: apparent singularity, not part of the boundary")
        profile = profile_from_records(records)
        rank = base_op.order
        h1e = dim_h1_euler(profile, rank=rank)
        h1p = None
        if profile.unipotent:
            h1p = dim_h1_profile(profile)
            flags.append(("euler-vs-profile", h1e == h1p))
        ab = self._find_ab(base_op, e, profile, h1e, asserted, flags, notes)
        hodge = None
        hprov = None
        table = None
        yuk = None
        if ab is not None:
            try:
                hodge = hodge_numbers(HodgeDegrees(ab.a, ab.b), profile)
                hprov = "theorem"
                table = l2_degree_table(HodgeDegrees(ab.a, ab.b), profile)
                flags.append(("l2-route", True))
                yuk = yukawa_zero_count(profile.n_sing, profile.g, ab.a)
            except RouteMismatchError as exc:
                flags.append(("l2-route", False))
                notes.append(str(exc))
            except HodgeError as exc:
                notes.append(f"Hodge numbers rejected: {exc}")
                status = STATUS_INCONSISTENT
        elif not profile.unipotent:
            forced = symmetry_forced_hodge_numbers(h1e)
            if forced is not None:
                hodge, hprov = forced, "symmetry"
        if hodge is not None:
            flags.append(("sum-identity", 2 * hodge.h40 + 2 * hodge.h31 + hodge.h22 == h1e))
            if hodge.h22 > 0:
                notes.append(f"predicted algebraic 2-cycle classes: {hodge.h22}")
        elif status == STATUS_OK:
            status = STATUS_AB_UNDETERMINED
        return HodgeReport(entry_id, str(base_op), e, self.mode, records, profile, h1e, h1p, ab, hodge, hprov,
                           yuk, table, status, tuple(flags), tuple(notes), residual)

    def _find_ab(self, base_op, e, profile, h1, asserted, flags, notes) -> ABResult | None:
        found = None
        if profile.unipotent and profile.g == 0 and h1 <= 1:
            try:
                d = solve_ab_corollary(h1, profile)
                found = ABResult(d.a, d.b, "corollary")
            except HodgeError as exc:
                notes.append(f"corollary not applicable: {exc}")
        if found is None and profile.unipotent:
            for e1 in sorted((k for k in range(1, e) if e % k == 0), reverse=True):
                sub = self.report(base_op, e1)
                if sub.ab is None or sub.profile is None or not sub.profile.unipotent:
                    continue
                d = propagate_ab_pullback(HodgeDegrees(sub.ab.a, sub.ab.b), e // e1, True)
                found = ABResult(d.a, d.b, "base-change", e1)
                break
        if asserted is not None:
            a, b = asserted
            if found is not None:
                flags.append(("asserted-ab", (found.a, found.b) == (a, b)))
            else:
                found = ABResult(a, b, "asserted")
        return found

    def _partial(self, base_op, e, entry_id, status, notes, flags, records=(), residual=None) -> HodgeReport:
        profile = None
        h1 = None
        recs = tuple(records)
        if recs and all(r.type is not None for r in recs):
            profile = profile_from_records(recs)
            h1 = dim_h1_euler(profile, rank=base_op.order)
        return HodgeReport(entry_id, str(base_op), e, self.mode, recs, profile, h1, None, None, None, None,
                           None, None, status, tuple(flags), tuple(notes), residual)


def analyze(op: ThetaOperator, e: int = 1, *, entry_id: str | None = None, mode: str = "auto",
            dps: int | None = None, tol=DEFAULT_TOL, verify: bool = False, basepoint=None,
            asserted_ab: tuple[int, int] | None = None, session: _Session | None = None) -> HodgeReport:
    """Full pipeline for ``pullback(op, e)``."""
    if e < 1:
        raise ValueError("pullback exponent must be positive")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    s = session or _Session(mode, dps or default_precision(), tol, verify, basepoint)
    try:
        return s.report(op, e, entry_id, asserted_ab)
    except IndicialError as exc:
        return HodgeReport(entry_id, str(op), e, mode, (), None, None, None, None, None, None, None, None,
                           STATUS_UNDETERMINED, (), (f"local exponents unavailable: {exc}",))


def new_session(mode: str = "auto", dps: int | None = None, tol=DEFAULT_TOL, verify: bool = False,
                basepoint=None) -> _Session:
    return _Session(mode, dps or default_precision(), tol, verify, basepoint)


@lru_cache(maxsize=None)
def analyze_catalog_entry(entry_id: str, e: int | None = None, mode: str = "auto") -> HodgeReport:
    """Cached analysis of a shipped catalog entry (default pullback from the catalog)."""
    from .catalog import default_catalog

    entry = default_catalog().get(entry_id)
    return analyze(entry.operator, entry.pullback if e is None else e, entry_id=entry_id, mode=mode,
                   session=_shared_session(mode))


@lru_cache(maxsize=None)
def _shared_session(mode: str) -> _Session:
    return new_session(mode)
