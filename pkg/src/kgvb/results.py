"""Tabular query results and their SPARQL-results-JSON wire form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .terms import Iri, Term


@dataclass
class ResultTable:
    vars: list[str]
    rows: list[dict[str, Term]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[Term | None]:
        return [row.get(name) for row in self.rows]


def term_to_json(term: Term) -> dict:
    if isinstance(term, Iri):
        return {"type": "uri", "value": term.value}
    out: dict = {"type": "literal", "value": term.lexical}
    if term.datatype:
        out["datatype"] = term.datatype
    if term.lang:
        out["xml:lang"] = term.lang
    return out


def table_to_json(table: ResultTable) -> dict:
    """SPARQL results JSON document for a table (the endpoint's response body)."""
    bindings = []
    for row in table.rows:
        bindings.append({name: term_to_json(row[name]) for name in table.vars if name in row})
    return {"head": {"vars": list(table.vars)}, "results": {"bindings": bindings}}


def canonical_results_bytes(table: ResultTable) -> bytes:
    """Canonical serialization used to compare results byte-for-byte."""
    doc = table_to_json(table)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
