import pytest

from kgvb.ntriples import (
    NTriplesError,
    UnsupportedTripleError,
    format_term,
    parse_ntriples,
    serialize_ntriples,
)
from kgvb.terms import Iri, Literal


def test_single_plain_literal_line():
    store = parse_ntriples('<http://g/1> <http://purl.org/dc/terms/title> "TP53" .')
    assert len(store) == 1
    ((s, p, o),) = list(store)
    assert s == Iri("http://g/1")
    assert o == Literal("TP53")


def test_duplicate_lines_collapse():
    line = '<http://g/1> <http://p> "x" .'
    store = parse_ntriples(line + "\n" + line + "\n")
    assert len(store) == 1


def test_fixture_count_matches_manifest(store, manifest):
    assert len(store) == manifest["triples"]


def test_typed_and_tagged_literals():
    text = (
        '<http://s> <http://p> "0.5"^^<http://www.w3.org/2001/XMLSchema#double> .\n'
        '<http://s> <http://p> "hello"@en .\n'
    )
    store = parse_ntriples(text)
    objects = {o for _, _, o in store}
    assert Literal("0.5", datatype="http://www.w3.org/2001/XMLSchema#double") in objects
    assert Literal("hello", lang="en") in objects


def test_escape_sequences_decode():
    store = parse_ntriples('<http://s> <http://p> "a\\"b\\\\c\\nd\\te" .')
    ((_, _, o),) = list(store)
    assert o.lexical == 'a"b\\c\nd\te'


def test_unicode_escapes():
    store = parse_ntriples('<http://s> <http://p> "\\u00e9\\U0001F600" .')
    ((_, _, o),) = list(store)
    assert o.lexical == "é\U0001F600"


def test_comments_and_blank_lines_skipped():
    text = "# a comment\n\n   \n<http://s> <http://p> <http://o> . # trailing\n"
    assert len(parse_ntriples(text)) == 1


def test_blank_node_rejected_with_line():
    with pytest.raises(UnsupportedTripleError) as exc:
        parse_ntriples("\n_:b0 <http://p> <http://o> .")
    assert exc.value.line == 2


def test_missing_dot_reports_position():
    with pytest.raises(NTriplesError) as exc:
        parse_ntriples("<http://s> <http://p> <http://o>")
    assert exc.value.line == 1
    assert "'.'" in exc.value.reason


@pytest.mark.parametrize(
    "line",
    [
        '<http://s> "lit" <http://o> .',  # literal predicate
        '"lit" <http://p> <http://o> .',  # literal subject
        "<http://s> <http://p> <http://o> . junk",
        '<http://s> <http://p> "unterminated .',
        "<http://s> <http://p> <bad iri> .",
        '<http://s> <http://p> "bad\\qescape" .',
    ],
)
def test_bad_lines_raise_syntax_error(line):
    with pytest.raises(NTriplesError):
        parse_ntriples(line)


def test_serialize_parse_identity_on_fixture(store):
    assert parse_ntriples(serialize_ntriples(store)) == store


def test_serialize_parse_identity_on_awkward_terms():
    triples = {
        (Iri("http://s"), Iri("http://p"), Literal('quote " slash \\ tab\t')),
        (Iri("http://s"), Iri("http://p"), Literal("line\nbreak", lang="en")),
        (Iri("http://s"), Iri("http://p"),
         Literal("1", datatype="http://www.w3.org/2001/XMLSchema#integer")),
    }
    from kgvb.store import TripleSet

    store = TripleSet(triples)
    assert parse_ntriples(serialize_ntriples(store)) == store


def test_format_term_shapes():
    assert format_term(Iri("http://x")) == "<http://x>"
    assert format_term(Literal("a", lang="en")) == '"a"@en'
    assert format_term(Literal("a", datatype="http://dt")) == '"a"^^<http://dt>'
