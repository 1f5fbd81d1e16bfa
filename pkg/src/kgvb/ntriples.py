"""N-Triples reader/writer for the subset this project uses (no blank nodes)."""

from __future__ import annotations

from .store import Triple, TripleSet
from .terms import Iri, Literal, Term


class NTriplesError(Exception):
    """Syntax error in an N-Triples document."""

    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class UnsupportedTripleError(Exception):
    """Line uses a feature outside the supported subset (blank nodes)."""

    def __init__(self, line: int, feature: str):
        super().__init__(f"line {line}: unsupported {feature}")
        self.line = line
        self.feature = feature


_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


class _LineScanner:
    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, reason: str) -> NTriplesError:
        return NTriplesError(self.lineno, self.pos + 1, reason)

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while not self.eof() and self.text[self.pos] in " \t":
            self.pos += 1

    def _unescape_at(self) -> str:
        # positioned on the backslash
        self.pos += 1
        if self.eof():
            raise self.error("dangling escape")
        ch = self.text[self.pos]
        self.pos += 1
        if ch in _ECHAR:
            return _ECHAR[ch]
        if ch in "uU":
            width = 4 if ch == "u" else 8
            hexdigits = self.text[self.pos : self.pos + width]
            if len(hexdigits) != width:
                raise self.error("truncated unicode escape")
            try:
                code = int(hexdigits, 16)
            except ValueError:
                raise self.error(f"bad unicode escape \\{ch}{hexdigits}") from None
            self.pos += width
            return chr(code)
        raise self.error(f"unknown escape \\{ch}")

    def read_iri(self) -> Iri:
        if self.peek() != "<":
            raise self.error("expected IRI")
        self.pos += 1
        out: list[str] = []
        while True:
            if self.eof():
                raise self.error("unterminated IRI")
            ch = self.text[self.pos]
            if ch == ">":
                self.pos += 1
                break
            if ch == "\\":
                out.append(self._unescape_at())
                continue
            if ch in ' "{}|^`' or ord(ch) <= 0x20:
                raise self.error(f"character {ch!r} not allowed in IRI")
            out.append(ch)
            self.pos += 1
        if not out:
            raise self.error("empty IRI")
        return Iri("".join(out))

    def read_literal(self) -> Literal:
        if self.peek() != '"':
            raise self.error("expected literal")
        self.pos += 1
        out: list[str] = []
        while True:
            if self.eof():
                raise self.error("unterminated literal")
            ch = self.text[self.pos]
            if ch == '"':
                self.pos += 1
                break
            if ch == "\\":
                out.append(self._unescape_at())
                continue
            out.append(ch)
            self.pos += 1
        lexical = "".join(out)
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            dt = self.read_iri()
            return Literal(lexical, datatype=dt.value)
        if self.peek() == "@":
            self.pos += 1
            start = self.pos
            while not self.eof() and (self.text[self.pos].isalnum() or self.text[self.pos] == "-"):
                self.pos += 1
            tag = self.text[start : self.pos]
            if not tag:
                raise self.error("empty language tag")
            return Literal(lexical, lang=tag)
        return Literal(lexical)

    def read_term(self, *, allow_literal: bool) -> Term:
        ch = self.peek()
        if ch == "_":
            raise UnsupportedTripleError(self.lineno, "blank node")
        if ch == "<":
            return self.read_iri()
        if ch == '"' and allow_literal:
            return self.read_literal()
        raise self.error(f"unexpected character {ch!r}")


def _parse_line(text: str, lineno: int) -> Triple | None:
    sc = _LineScanner(text, lineno)
    sc.skip_ws()
    if sc.eof() or sc.peek() == "#":
        return None
    s = sc.read_term(allow_literal=False)
    sc.skip_ws()
    p = sc.read_term(allow_literal=False)
    sc.skip_ws()
    o = sc.read_term(allow_literal=True)
    sc.skip_ws()
    if sc.peek() != ".":
        raise sc.error("expected '.' terminating the triple")
    sc.pos += 1
    sc.skip_ws()
    if not sc.eof() and sc.peek() != "#":
        raise sc.error("trailing content after '.'")
    assert isinstance(s, Iri) and isinstance(p, Iri)
    return (s, p, o)


def parse_ntriples(text: str) -> TripleSet:
    """Parse an N-Triples document into a TripleSet (duplicate lines collapse)."""
    triples: list[Triple] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        triple = _parse_line(line, lineno)
        if triple is not None:
            triples.append(triple)
    return TripleSet(triples)


def load_ntriples(path) -> TripleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_ntriples(fh.read())


def _escape_literal(value: str) -> str:
    out = []
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    return "".join(out)


def format_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    body = f'"{_escape_literal(term.lexical)}"'
    if term.datatype:
        return f"{body}^^<{term.datatype}>"
    if term.lang:
        return f"{body}@{term.lang}"
    return body


def serialize_ntriples(store: TripleSet) -> str:
    """Write the store back out; sorted so output is reproducible."""
    lines = sorted(
        f"{format_term(s)} {format_term(p)} {format_term(o)} ." for s, p, o in store
    )
    return "\n".join(lines) + ("\n" if lines else "")
