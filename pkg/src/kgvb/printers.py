"""Printers turn query result tables into spoken-style sentences, one per intent."""

from __future__ import annotations

from .engine import IntentResult
from .terms import Iri, lexical_form

SPOKEN_LIMIT = 5


def join_spoken(items: list[str], limit: int = SPOKEN_LIMIT) -> str:
    """Comma list capped at limit, closing with 'and N more' when truncated."""
    if not items:
        return ""
    if len(items) > limit:
        head = items[:limit]
        return ", ".join(head) + f", and {len(items) - limit} more"
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return f"{items[0]} and {items[1]}"
    return ", ".join(items[:-1]) + f", and {items[-1]}"


def _column_texts(result: IntentResult, name: str) -> list[str]:
    return [lexical_form(t) for t in result.table.column(name) if t is not None]


def _slot(result: IntentResult, name: str, fallback: str) -> str:
    return result.slot_values.get(name, fallback)


def _pubmed_id(term) -> str:
    if isinstance(term, Iri):
        return term.value.rstrip("/").rsplit("/", 1)[-1]
    return lexical_form(term)


def print_definition(result: IntentResult, limit: int) -> str:
    disease = _slot(result, "disease", "that disease")
    identifiers = _column_texts(result, "identifier")
    if not identifiers:
        return f"I could not find {disease} in the knowledge graph."
    return f"{disease} is catalogued with the identifiers {join_spoken(identifiers, limit)}."


def print_genes_for_disease(result: IntentResult, limit: int) -> str:
    disease = _slot(result, "disease", "that disease")
    symbols = _column_texts(result, "geneSymbol")
    if not symbols:
        return f"I found no genes associated with {disease}."
    return (
        f"I found {len(symbols)} genes associated with {disease}: "
        f"{join_spoken(symbols, limit)}."
    )


def print_causation(result: IntentResult, limit: int) -> str:
    disease = _slot(result, "disease", "that disease")
    symbols = _column_texts(result, "geneSymbol")
    if not symbols:
        return f"I found no genes reported to cause {disease}."
    return (
        f"Ranked by publication support, the genes linked to {disease} are "
        f"{join_spoken(symbols, limit)}."
    )


def print_diseases_for_gene(result: IntentResult, limit: int) -> str:
    gene = _slot(result, "gene", "that gene")
    names = _column_texts(result, "diseaseName")
    if not names:
        return f"I found no diseases associated with {gene}."
    return f"{gene} is associated with {len(names)} diseases: {join_spoken(names, limit)}."


def print_common_genes(result: IntentResult, limit: int) -> str:
    rows = result.table.rows
    if not rows:
        return "I found no genes shared between diseases."
    phrases = [
        f"{lexical_form(r['geneSymbol'])} in {lexical_form(r['diseaseCount'])} diseases"
        for r in rows
    ]
    return (
        f"{len(rows)} genes appear in more than one disease. The most shared are "
        f"{join_spoken(phrases, limit)}."
    )


def print_evidence(result: IntentResult, limit: int) -> str:
    del limit
    gene = _slot(result, "gene", "that gene")
    disease = _slot(result, "disease", "that disease")
    rows = result.table.rows
    if not rows:
        return f"I found no published evidence linking {gene} and {disease}."
    first = rows[0]
    pmid = _pubmed_id(first["paper"])
    sentence = lexical_form(first["sentence"])
    lead = f"I found {len(rows)} supporting excerpts for {gene} and {disease}."
    return f'{lead} From PubMed article {pmid}: "{sentence}"'


def print_publication_count(result: IntentResult, limit: int) -> str:
    del limit
    gene = _slot(result, "gene", "that gene")
    disease = _slot(result, "disease", "that disease")
    counts = _column_texts(result, "publications")
    n = int(counts[0]) if counts else 0
    if n == 0:
        return f"I found no publications supporting an association between {gene} and {disease}."
    word = "publication" if n == 1 else "publications"
    return f"I found {n} {word} supporting the association between {gene} and {disease}."


def print_top_associations(result: IntentResult, limit: int) -> str:
    rows = result.table.rows
    if not rows:
        return "I found no gene disease associations."
    phrases = [
        f"{lexical_form(r['geneSymbol'])} with {lexical_form(r['diseaseName'])} "
        f"at {lexical_form(r['publications'])} publications"
        for r in rows
    ]
    return f"The most studied associations are {join_spoken(phrases, limit)}."


def print_protein_class(result: IntentResult, limit: int) -> str:
    cls = _slot(result, "protein_class", "that protein class")
    names = _column_texts(result, "diseaseName")
    if not names:
        return f"I found no diseases associated with {cls} genes."
    return f"Diseases associated with {cls} genes include {join_spoken(names, limit)}."


def print_generic(result: IntentResult, limit: int) -> str:
    del limit
    n = len(result.table.rows)
    if n == 0:
        return "I found no results for that."
    return f"I found {n} results."


PRINTERS = {
    "DefinitionIntent": print_definition,
    "GenesForDiseaseIntent": print_genes_for_disease,
    "CausationIntent": print_causation,
    "DiseasesForGeneIntent": print_diseases_for_gene,
    "CommonGenesIntent": print_common_genes,
    "EvidenceIntent": print_evidence,
    "PublicationCountIntent": print_publication_count,
    "TopAssociationsIntent": print_top_associations,
    "ProteinClassIntent": print_protein_class,
}


def render_text(result: IntentResult, intent: str, spoken_limit: int = SPOKEN_LIMIT) -> str:
    printer = PRINTERS.get(intent, print_generic)
    return printer(result, spoken_limit)
