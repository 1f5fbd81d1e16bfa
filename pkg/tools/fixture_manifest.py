#!/usr/bin/env python3
"""Count fixture contents with plain line filters and write fixtures/manifest.json.

Deliberately does NOT use the package's N-Triples parser: the manifest is
the independent cross-check that the parser is measured against.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
DISEASE_CLS = "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#C7057"
GENE_CLS = "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#C16612"
ASSOC_CLS = re.compile(
    r"<http://rdf\.disgenet\.org/resource/ontology/(Therapeutic|Biomarker)Association>"
)


def main() -> None:
    path = ROOT / "fixtures" / "disgenet-mini.nt"
    unique_lines: set[str] = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            unique_lines.add(line)

    type_lines = [l for l in unique_lines if f"<{RDF_TYPE}>" in l]
    diseases = sum(1 for l in type_lines if f"<{DISEASE_CLS}>" in l)
    genes = sum(1 for l in type_lines if f"<{GENE_CLS}>" in l)
    gdas = sum(1 for l in type_lines if ASSOC_CLS.search(l))
    papers = {
        m.group(0)
        for l in unique_lines
        for m in re.finditer(r"<http://identifiers\.org/pubmed/\d+>", l)
    }

    manifest = {
        "triples": len(unique_lines),
        "diseases": diseases,
        "genes": genes,
        "gdas": gdas,
        "papers": len(papers),
    }
    out = ROOT / "fixtures" / "manifest.json"
    out.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(manifest))


if __name__ == "__main__":
    main()
