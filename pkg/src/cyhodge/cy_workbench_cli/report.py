"""Text and JSON rendering of analysis reports.

JSON keeps exact rationals as ``"p/q"`` strings; ``report_from_json`` rebuilds
an equal ``HodgeReport``.
"""

from __future__ import annotations

import json
from fractions import Fraction

import mpmath

from ..hodge_calc import HodgeNumbers, L2DegreeTable, PointProfile
from ..monodromy_engine import JordanBlock, LocalMonodromyDatum, PointType
from ..theta_ops import PointLocation, RationalPoly, format_rational
from .analysis import ABResult, HodgeReport, SingularPointRecord

SCHEMA = "cyhodge/1"


def _q(x: Fraction) -> str:
    return format_rational(Fraction(x))


def _unq(s: str) -> Fraction:
    return Fraction(s)


def location_to_json(p: PointLocation) -> dict:
    out = {"kind": p.kind, "label": p.label}
    if p.kind == "finite":
        out["minpoly"] = [_q(c) for c in p.minpoly.coeffs]
        out["root_index"] = p.root_index
    if p.approx is not None:
        with mpmath.workdps(40):
            out["approx"] = [mpmath.nstr(p.approx.real, 30), mpmath.nstr(p.approx.imag, 30)]
    return out


def location_from_json(d: dict) -> PointLocation:
    if d["kind"] == "zero":
        return PointLocation.zero()
    if d["kind"] == "infinity":
        return PointLocation.infinity()
    f = RationalPoly(tuple(_unq(c) for c in d["minpoly"]), "z")
    approx = None
    if "approx" in d:
        with mpmath.workdps(40):
            approx = mpmath.mpc(mpmath.mpf(d["approx"][0]), mpmath.mpf(d["approx"][1]))
    return PointLocation("finite", f, int(d["root_index"]), approx)


def datum_to_json(d: LocalMonodromyDatum | None):
    if d is None:
        return None
    return [[b.order, b.rotation, b.size] for b in d.blocks]


def datum_from_json(v) -> LocalMonodromyDatum | None:
    if v is None:
        return None
    return LocalMonodromyDatum(tuple(JordanBlock(*b) for b in v))


def type_to_json(t: PointType | None):
    if t is None:
        return None
    out = {"kind": t.kind}
    if t.order is not None:
        out["order"] = t.order
    return out


def type_from_json(v, datum) -> PointType | None:
    if v is None:
        return None
    if v["kind"] in ("FiniteOrder", "QuasiUnipotent"):
        return PointType(v["kind"], v.get("order"), datum)
    return PointType(v["kind"])


def record_to_json(r: SingularPointRecord) -> dict:
    return {
        "location": location_to_json(r.location),
        "exponents": [_q(x) for x in r.exponents],
        "datum": datum_to_json(r.datum),
        "type": type_to_json(r.type),
        "R": r.R,
        "source": r.source,
        "error_bound": r.error_bound,
        "in_boundary": r.in_boundary,
    }


def record_from_json(d: dict) -> SingularPointRecord:
    datum = datum_from_json(d["datum"])
    return SingularPointRecord(
        location_from_json(d["location"]),
        tuple(_unq(x) for x in d["exponents"]),
        datum,
        type_from_json(d["type"], datum),
        d["R"],
        d["source"],
        d["error_bound"],
    )


def report_to_json(r: HodgeReport) -> dict:
    prof = None
    if r.profile is not None:
        prof = {"A": r.profile.A, "B": r.profile.B, "C": r.profile.C, "g": r.profile.g,
                "residual": [[k, v] for k, v in r.profile.residual]}
    hodge = None
    if r.hodge is not None:
        hodge = {k: getattr(r.hodge, k) for k in ("h40", "h31", "h22", "h13", "h04", "dim")}
    table = None
    if r.l2_table is not None:
        table = {k: getattr(r.l2_table, k) for k in L2DegreeTable.__dataclass_fields__}
        table["cokernel_differences"] = list(r.l2_table.cokernel_differences)
    return {
        "schema": SCHEMA,
        "entry_id": r.entry_id,
        "operator": r.operator_text,
        "pullback": r.pullback,
        "mode": r.mode,
        "status": r.status,
        "exit_code": r.exit_code,
        "points": [record_to_json(p) for p in r.points],
        "profile": prof,
        "h1": {"euler": r.h1_euler, "profile": r.h1_profile},
        "ab": None if r.ab is None else {"a": r.ab.a, "b": r.ab.b, "provenance": r.ab.provenance,
                                         "source_pullback": r.ab.source_e},
        "hodge_numbers": hodge,
        "hodge_provenance": r.hodge_provenance,
        "yukawa_zero_count": r.yukawa_zeros,
        "l2_degree_table": table,
        "flags": {k: v for k, v in r.flags},
        "notes": list(r.notes),
        "product_relation_residual": r.product_residual,
    }


def report_from_json(d: dict) -> HodgeReport:
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    prof = None
    if d["profile"] is not None:
        p = d["profile"]
        prof = PointProfile(p["A"], p["B"], p["C"], p["g"], tuple((k, v) for k, v in p["residual"]))
    hodge = None if d["hodge_numbers"] is None else HodgeNumbers(**d["hodge_numbers"])
    table = None
    if d["l2_degree_table"] is not None:
        t = dict(d["l2_degree_table"])
        t.pop("cokernel_differences", None)
        table = L2DegreeTable(**t)
    ab = None
    if d["ab"] is not None:
        ab = ABResult(d["ab"]["a"], d["ab"]["b"], d["ab"]["provenance"], d["ab"]["source_pullback"])
    return HodgeReport(
        entry_id=d["entry_id"],
        operator_text=d["operator"],
        pullback=d["pullback"],
        mode=d["mode"],
        points=tuple(record_from_json(x) for x in d["points"]),
        profile=prof,
        h1_euler=d["h1"]["euler"],
        h1_profile=d["h1"]["profile"],
        ab=ab,
        hodge=hodge,
        hodge_provenance=d["hodge_provenance"],
        yukawa_zeros=d["yukawa_zero_count"],
        l2_table=table,
        status=d["status"],
        flags=tuple(d["flags"].items()),
        notes=tuple(d["notes"]),
        product_residual=d["product_relation_residual"],
    )


def dumps(r: HodgeReport) -> str:
    return json.dumps(report_to_json(r), indent=2, sort_keys=False)


def loads(text: str) -> HodgeReport:
    return report_from_json(json.loads(text))


def render_text(r: HodgeReport) -> str:
    lines = []
    head = r.entry_id or "operator"
    lines.append(f"{head}  (pullback e = {r.pullback}, mode {r.mode})")
    lines.append(f"  operator: {r.operator_text}")
    lines.append("  singular points:")
    for p in r.points:
        ex = ", ".join(_q(x) for x in p.exponents)
        t = str(p.type) if p.type is not None else "undetermined"
        R = "-" if p.R is None else str(p.R)
        err = "" if p.error_bound is None else f"  err<={p.error_bound:.1e}"
        lines.append(f"    {str(p.location):<40} exps [{ex}]  type {t}  R={R}  ({p.source}){err}")
    if r.profile is not None:
        res = "".join(f" {k}:R={v}" for k, v in r.profile.residual)
        lines.append(f"  profile: A={r.profile.A} B={r.profile.B} C={r.profile.C} g={r.profile.g}"
                     + (f"  non-unipotent:{res}" if res else ""))
    if r.h1_euler is not None:
        extra = "" if r.h1_profile is None else f" (dimension formula {r.h1_profile})"
        lines.append(f"  h1 = {r.h1_euler}{extra}")
    if r.ab is not None:
        src = f" from e = {r.ab.source_e}" if r.ab.source_e else ""
        lines.append(f"  (a, b) = ({r.ab.a}, {r.ab.b})  [{r.ab.provenance}{src}]")
    if r.hodge is not None:
        h = r.hodge
        lines.append(f"  Hodge numbers (h40, h31, h22, h13, h04) = {h.as_tuple()}  [{r.hodge_provenance}]")
    else:
        lines.append(f"  Hodge numbers: {r.status}")
    if r.yukawa_zeros is not None:
        lines.append(f"  Yukawa coupling zeros: {r.yukawa_zeros}")
    if r.l2_table is not None:
        lines.append("  L2 degree table:")
        for left, dl, right, dr in r.l2_table.rows():
            lines.append(f"    {left:<14} {dl:>4}    {right:<18} {dr:>4}")
        lines.append(f"    cokernel differences: {r.l2_table.cokernel_differences}")
    if r.flags:
        lines.append("  checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in r.flags))
    for n in r.notes:
        lines.append(f"  note: {n}")
    lines.append(f"  status: {r.status}")
    return "\n".join(lines)
