"""Knot tables stored as CSV.

Columns are ``name, kind, payload, declared_class, tau``. ``kind`` is
``expr`` (a knot expression that may mention other rows as ``K(name)``),
``pd`` or ``braid``. A bad row does not spoil the table: it is kept with
its error so that batch jobs can report it and move on.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from .diagrams import parse_braid, parse_pd
from .errors import InputError, ParseError
from .knots import KnotExpr, Leaf, parse_knot_expr, parse_leaf_class

__all__ = ["TableEntry", "KnotTable", "load_table", "parse_table"]

COLUMNS = ("name", "kind", "payload", "declared_class", "tau")


@dataclass(frozen=True)
class TableEntry:
    name: str
    knot: KnotExpr | None
    tau: int | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class KnotTable:
    entries: tuple[TableEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def leaves(self) -> dict[str, KnotExpr]:
        return {e.name: e.knot for e in self.entries if e.ok}


def _parse_tau(text: str) -> int | None:
    text = (text or "").strip()
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"tau must be an integer, got {text!r}") from None


def parse_table(text: str) -> KnotTable:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return KnotTable(())
    header = [f.strip() for f in reader.fieldnames]
    missing = [c for c in ("name", "kind", "payload") if c not in header]
    if missing:
        raise ParseError(f"knot table is missing column(s): {', '.join(missing)}")
    reader.fieldnames = header

    raw = []
    for row in reader:
        raw.append({k: (v or "").strip() for k, v in row.items() if k is not None})

    resolved: dict[str, KnotExpr] = {}
    errors: dict[str, str] = {}
    taus: dict[str, int | None] = {}
    exprs: dict[str, str] = {}
    order: list[str] = []
    seen: set[str] = set()

    for i, row in enumerate(raw, start=2):
        name = row.get("name", "")
        if not name:
            name = f"<line {i}>"
            errors[name] = "empty name"
            order.append(name)
            continue
        if name in seen:
            errors[f"{name} (line {i})"] = f"duplicate name {name!r}"
            order.append(f"{name} (line {i})")
            continue
        seen.add(name)
        order.append(name)
        try:
            taus[name] = _parse_tau(row.get("tau", ""))
            kind = row.get("kind", "").lower()
            payload = row.get("payload", "")
            if kind == "expr":
                exprs[name] = payload
                continue
            if kind == "pd":
                source = parse_pd(payload)
            elif kind == "braid":
                source = parse_braid(payload)
            else:
                raise ParseError(f"unknown kind {kind!r} (expected expr, pd or braid)")
            cls = parse_leaf_class(row.get("declared_class", ""))
            resolved[name] = Leaf(name, source, cls, taus[name])
        except InputError as exc:
            errors[name] = str(exc)

    # expression rows may refer to each other; resolve depth first
    visiting: set[str] = set()

    def resolve(name: str) -> KnotExpr:
        if name in resolved:
            return resolved[name]
        if name in errors:
            raise ParseError(f"K({name}) refers to a bad row")
        if name not in exprs:
            raise ParseError(f"unknown knot K({name})")
        if name in visiting:
            raise ParseError(f"cyclic reference through K({name})")
        visiting.add(name)
        try:
            text = exprs[name]
            deps = _leaf_names(text)
            table = {d: resolve(d) for d in deps}
            resolved[name] = parse_knot_expr(text, table, strict=True)
        finally:
            visiting.discard(name)
        return resolved[name]

    for name in exprs:
        try:
            resolve(name)
        except InputError as exc:
            errors.setdefault(name, str(exc))

    entries = []
    for name in order:
        if name in errors:
            entries.append(TableEntry(name, None, taus.get(name), errors[name]))
        else:
            entries.append(TableEntry(name, resolved[name], taus.get(name)))
    return KnotTable(tuple(entries))


def _leaf_names(text: str) -> list[str]:
    names = []
    pos = 0
    while True:
        start = text.find("K(", pos)
        if start < 0:
            return names
        end = text.find(")", start)
        if end < 0:
            return names
        names.append(text[start + 2:end].strip())
        pos = end + 1


def load_table(path: str | Path) -> KnotTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read knot table {path}: {exc.strerror}") from None
    return parse_table(text)
