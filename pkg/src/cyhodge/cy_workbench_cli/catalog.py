"""Shipped operator catalog and closed-form coefficient sequences."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb
from typing import Callable

from ..theta_ops import ThetaOperator, parse_operator


@dataclass(frozen=True)
class TableRow:
    e: int
    h1: int
    h40: int | None = None
    h31: int | None = None
    h22: int | None = None
    known_discrepancy: str | None = None  # cell name the tool deliberately disagrees with

    @property
    def populated(self) -> bool:
        return self.h40 is not None


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    name: str
    model_label: str
    operator_text: str
    pullback: int = 1
    notes: str = ""
    provenance: str = "source"
    table: int | None = None
    table_rows: tuple[TableRow, ...] = field(default=())
    closed_form: str | None = None

    @property
    def operator(self) -> ThetaOperator:
        return _parsed(self.operator_text)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "model_label": self.model_label,
            "operator_text": self.operator_text,
            "pullback": self.pullback,
            "notes": self.notes,
            "provenance": self.provenance,
            "table": self.table,
            "table_rows": [{k: v for k, v in row.__dict__.items() if v is not None or k != "known_discrepancy"}
                           for row in self.table_rows],
            "closed_form": self.closed_form,
        }


@lru_cache(maxsize=None)
def _parsed(text: str) -> ThetaOperator:
    return parse_operator(text)


def _aesz25(n: int) -> int:
    return comb(2 * n, n) ** 2 * sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def _elliptic(n: int) -> int:
    return sum(4 ** (n - k) * comb(2 * k, k) ** 2 * comb(2 * n - 2 * k, n - k) for k in range(n + 1))


CLOSED_FORMS: dict[str, Callable[[int], int]] = {
    "aesz25": _aesz25,
    "elliptic": _elliptic,
    "elliptic-squared": lambda n: _elliptic(n) ** 2,
}


def closed_form_terms(name: str, M: int) -> list[Fraction]:
    f = CLOSED_FORMS[name]
    return [Fraction(f(n)) for n in range(M + 1)]


def _entry(d: dict) -> CatalogEntry:
    rows = tuple(TableRow(**r) for r in d.get("table_rows", ()))
    return CatalogEntry(
        id=d["id"],
        name=d["name"],
        model_label=d["model_label"],
        operator_text=d["operator_text"],
        pullback=int(d.get("pullback", 1)),
        notes=d.get("notes", ""),
        provenance=d.get("provenance", "source"),
        table=d.get("table"),
        table_rows=rows,
        closed_form=d.get("closed_form"),
    )


class CatalogError(KeyError):
    pass


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]

    def __post_init__(self):
        ids = [e.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate catalog ids")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: str) -> bool:
        return any(e.id == key for e in self.entries)

    def get(self, key: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == key:
                return e
        raise CatalogError(f"unknown catalog id {key!r}")

    def table_entries(self, table: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.table == table]

    def hypergeometric(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.table is not None]

    def further_examples(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.table is None and e.table_rows]


def load_catalog(path: str | None = None) -> Catalog:
    if path is None:
        text = resources.files(__package__).joinpath("data/catalog.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return Catalog(tuple(_entry(d) for d in json.loads(text)))


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog()
