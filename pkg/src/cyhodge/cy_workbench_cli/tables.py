"""Regeneration of the hypergeometric pullback tables with per-cell provenance."""

from __future__ import annotations

import difflib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .analysis import analyze_catalog_entry
from .catalog import Catalog, CatalogEntry, TableRow, default_catalog

CELLS = ("h1", "h40", "h31", "h22")

MATCH = "source-match"
PREDICTION = "prediction"
DISCREPANCY = "discrepancy"
UNDETERMINED = "ab-undetermined"

TITLES = {
    1: "semi-simple monodromy at infinity",
    2: "one 2x2 Jordan block at infinity",
    3: "two 2x2 Jordan blocks at infinity",
    4: "a single 4x4 Jordan block at infinity",
}
MARK = {MATCH: "", PREDICTION: "*", DISCREPANCY: "!", UNDETERMINED: "?"}

GOLDEN_TEXT = "tables.txt"
GOLDEN_JSON = "tables.json"


@dataclass(frozen=True)
class Cell:
    name: str
    value: int | None
    source: int | None
    provenance: str

    def to_json(self) -> dict:
        return {"value": self.value, "source": self.source, "provenance": self.provenance}


@dataclass(frozen=True)
class TableLine:
    entry_id: str
    model: str
    e: int
    status: str
    cells: tuple[Cell, ...]
    exit_code: int

    def cell(self, name: str) -> Cell:
        return next(c for c in self.cells if c.name == name)


@dataclass(frozen=True)
class TableSet:
    sections: tuple[tuple[str, tuple[TableLine, ...]], ...]
    notes: tuple[str, ...]
    failures: tuple[str, ...]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0


def _computed(entry: CatalogEntry, e: int):
    r = analyze_catalog_entry(entry.id, e)
    vals = {"h1": r.h1}
    for k in CELLS[1:]:
        vals[k] = None if r.hodge is None else getattr(r.hodge, k)
    return r, vals


def _line(entry: CatalogEntry, row: TableRow, notes: list, failures: list) -> TableLine:
    report, vals = _computed(entry, row.e)
    cells = []
    for name in CELLS:
        src = getattr(row, name)
        val = vals[name]
        if src is None:
            prov = PREDICTION if val is not None else UNDETERMINED
        elif val == src:
            prov = MATCH
        else:
            prov = DISCREPANCY
            text = f"{entry.model_label} e={row.e} {name}: table {src}, computed {val}"
            notes.append(text)
            if row.known_discrepancy != name:
                failures.append(text)
        cells.append(Cell(name, val, src, prov))
    if report.exit_code == 1:
        failures.append(f"{entry.id} e={row.e}: report status {report.status} with failed checks")
    return TableLine(entry.id, entry.model_label, row.e, report.status, tuple(cells), report.exit_code)


def build_tables(catalog: Catalog | None = None) -> TableSet:
    cat = catalog or default_catalog()
    notes: list[str] = []
    failures: list[str] = []
    sections = []
    for t in sorted({e.table for e in cat.hypergeometric()}):
        lines = tuple(_line(ent, row, notes, failures) for ent in cat.table_entries(t) for row in ent.table_rows)
        sections.append((f"Table {t}: {TITLES.get(t, '')}".rstrip(": "), lines))
    extra = tuple(_line(ent, row, notes, failures) for ent in cat.further_examples() for row in ent.table_rows)
    if extra:
        sections.append(("Further examples", extra))
    return TableSet(tuple(sections), tuple(notes), tuple(failures))


def _fmt(c: Cell) -> str:
    if c.value is None:
        return "?"
    return f"{c.value}{MARK[c.provenance]}"


def render_text(ts: TableSet) -> str:
    out = []
    width = max(len(line.model) for _, lines in ts.sections for line in lines) + 2
    for title, lines in ts.sections:
        out.append(title)
        out.append(f"  {'Model':<{width}}{'e':>4}{'h1':>7}{'h40':>7}{'h31':>7}{'h22':>7}")
        for line in lines:
            vals = "".join(f"{_fmt(c):>7}" for c in line.cells)
            out.append(f"  {line.model:<{width}}{line.e:>4}{vals}")
        out.append("")
    out.append("legend: plain = matches source, * = prediction (blank in source), "
               "! = discrepancy, ? = ab-undetermined")
    for n in ts.notes:
        out.append(f"discrepancy: {n}")
    return "\n".join(out) + "\n"


def to_json(ts: TableSet) -> dict:
    return {
        "schema": "cyhodge/1",
        "kind": "tables",
        "sections": [
            {
                "title": title,
                "rows": [
                    {"id": ln.entry_id, "model": ln.model, "e": ln.e, "status": ln.status,
                     "cells": {c.name: c.to_json() for c in ln.cells}}
                    for ln in lines
                ],
            }
            for title, lines in ts.sections
        ],
        "discrepancies": list(ts.notes),
        "failures": list(ts.failures),
    }


def render_json(ts: TableSet) -> str:
    return json.dumps(to_json(ts), indent=2) + "\n"


def golden_text(name: str) -> str | None:
    f = resources.files(__package__).joinpath("data/golden").joinpath(name)
    try:
        return f.read_text(encoding="utf-8")
    except FileNotFoundError:
        return None


def golden_diff(rendered: str, name: str, golden_dir: str | Path | None = None) -> list[str]:
    """Unified diff of ``rendered`` against the stored golden file (empty when equal)."""
    if golden_dir is None:
        stored = golden_text(name)
    else:
        p = Path(golden_dir) / name
        stored = p.read_text(encoding="utf-8") if p.exists() else None
    if stored is None:
        return [f"missing golden file {name}"]
    return list(difflib.unified_diff(stored.splitlines(), rendered.splitlines(),
                                     f"golden/{name}", "current", lineterm=""))


def write_golden(ts: TableSet, golden_dir: str | Path) -> list[Path]:
    d = Path(golden_dir)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, text in ((GOLDEN_TEXT, render_text(ts)), (GOLDEN_JSON, render_json(ts))):
        p = d / name
        p.write_text(text, encoding="utf-8")
        out.append(p)
    return out


def default_golden_dir() -> Path:
    return Path(str(resources.files(__package__).joinpath("data/golden")))
