"""RDF terms and the vocabulary constants used by the bundled dataset."""

from __future__ import annotations

from dataclasses import dataclass

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#integer"
XSD_DOUBLE = "http://www.w3.org/2001/XMLSchema#double"

# Namespaces the bundled queries and fixtures are written against.
NS_SIO = "http://semanticscience.org/resource/"
NS_NCIT = "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#"
NS_DCTERMS = "http://purl.org/dc/terms/"


@dataclass(frozen=True)
class Iri:
    """An absolute IRI reference."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI value must be non-empty")

    def __repr__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True)
class Literal:
    """An RDF literal: plain, typed, or language-tagged (never both)."""

    lexical: str
    datatype: str | None = None
    lang: str | None = None

    def __post_init__(self) -> None:
        if self.datatype is not None and self.lang is not None:
            raise ValueError("literal cannot carry both a datatype and a language tag")

    def __repr__(self) -> str:
        if self.datatype:
            return f'"{self.lexical}"^^<{self.datatype}>'
        if self.lang:
            return f'"{self.lexical}"@{self.lang}'
        return f'"{self.lexical}"'


Term = Iri | Literal


def lexical_form(term: Term) -> str:
    """Plain-text content of a term: the IRI string or the literal's lexical form."""
    return term.value if isinstance(term, Iri) else term.lexical
