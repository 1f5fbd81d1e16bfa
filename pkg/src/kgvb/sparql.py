"""Parser for the restricted SPARQL dialect the bundled queries use.

Supported: PREFIX declarations, SELECT [DISTINCT] with plain variables,
``str(?v) as ?alias`` and ``count(?v) as ?alias`` projections, basic graph
patterns with ``;`` predicate lists and ``,`` object lists, ``a`` as
rdf:type, ORDER BY ASC/DESC, LIMIT.  Anything else is rejected explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import RDF_TYPE, Iri, Literal, Term


class SparqlSyntaxError(Exception):
    def __init__(self, position: int, expected: str):
        super().__init__(f"at offset {position}: expected {expected}")
        self.position = position
        self.expected = expected


class UnknownPrefixError(Exception):
    def __init__(self, name: str):
        super().__init__(f"undeclared prefix {name!r}")
        self.name = name


class UnsupportedFeatureError(Exception):
    def __init__(self, keyword: str):
        super().__init__(f"SPARQL feature not in the supported dialect: {keyword}")
        self.keyword = keyword


# Keywords that are valid SPARQL but outside this engine's dialect.
_UNSUPPORTED = {
    "optional", "filter", "union", "group", "having", "values", "bind",
    "service", "minus", "graph", "construct", "ask", "describe", "insert",
    "delete", "offset", "from", "reduced", "exists", "named",
}

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class VarExpr:
    var: str


@dataclass(frozen=True)
class StrExpr:
    var: str


@dataclass(frozen=True)
class CountExpr:
    var: str


Expr = VarExpr | StrExpr | CountExpr


@dataclass(frozen=True)
class Projection:
    expr: Expr
    alias: str | None = None

    @property
    def output_name(self) -> str:
        return self.alias if self.alias is not None else self.expr.var


@dataclass(frozen=True)
class TriplePattern:
    s: Var | Iri
    p: Var | Iri
    o: Var | Term

    def variables(self) -> set[str]:
        return {t.name for t in (self.s, self.p, self.o) if isinstance(t, Var)}


@dataclass(frozen=True)
class OrderKey:
    var: str
    ascending: bool = True


@dataclass(frozen=True)
class SelectQuery:
    projections: tuple[Projection, ...]
    where: tuple[TriplePattern, ...]
    distinct: bool = False
    order_by: tuple[OrderKey, ...] = ()
    limit: int | None = None
    prefixes: tuple[tuple[str, str], ...] = field(default=())

    def pattern_variables(self) -> set[str]:
        out: set[str] = set()
        for pat in self.where:
            out |= pat.variables()
        return out

    def output_names(self) -> list[str]:
        return [p.output_name for p in self.projections]


# --- tokenizer ---------------------------------------------------------------

@dataclass
class _Token:
    kind: str  # iri pname var literal ident num punct eof
    value: object
    pos: int


_PUNCT = set("{}.;,()")


def _is_name_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_name_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_-"


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str) -> SparqlSyntaxError:
        return SparqlSyntaxError(self.pos, expected)

    def _skip_ws(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self.pos += 1
            else:
                return

    def _name(self, allow_leading_digit: bool = False) -> str:
        start = self.pos
        if self.pos < len(self.text):
            ch = self.text[self.pos]
            if _is_name_start(ch) or (allow_leading_digit and ch.isdigit()):
                self.pos += 1
                while self.pos < len(self.text) and _is_name_char(self.text[self.pos]):
                    self.pos += 1
        return self.text[start : self.pos]

    def _iri(self) -> Iri:
        start = self.pos
        self.pos += 1
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                self.pos = start
                raise self.error("closing '>' of IRI")
            ch = self.text[self.pos]
            if ch == ">":
                self.pos += 1
                break
            if ch in ' "{}|^`<' or ord(ch) <= 0x20:
                raise self.error("IRI character")
            out.append(ch)
            self.pos += 1
        if not out:
            raise SparqlSyntaxError(start, "non-empty IRI")
        return Iri("".join(out))

    def _string_body(self) -> str:
        self.pos += 1
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("closing '\"' of literal")
            ch = self.text[self.pos]
            if ch == '"':
                self.pos += 1
                return "".join(out)
            if ch == "\n":
                raise self.error("closing '\"' before end of line")
            if ch == "\\":
                self.pos += 1
                if self.pos >= len(self.text):
                    raise self.error("escape sequence")
                esc = self.text[self.pos]
                mapped = {"t": "\t", "n": "\n", "r": "\r", "b": "\b", "f": "\f",
                          '"': '"', "'": "'", "\\": "\\"}.get(esc)
                if mapped is None:
                    raise self.error("valid escape sequence")
                out.append(mapped)
                self.pos += 1
                continue
            out.append(ch)
            self.pos += 1

    def _literal(self) -> Literal:
        lexical = self._string_body()
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.pos < len(self.text) and self.text[self.pos] == "<":
                return Literal(lexical, datatype=self._iri().value)
            # datatype as prefixed name resolves later; keep it raw
            prefix = self._name()
            if self.pos >= len(self.text) or self.text[self.pos] != ":":
                raise self.error("datatype IRI")
            self.pos += 1
            local = self._name(allow_leading_digit=True)
            return Literal(lexical, datatype=f"\x00{prefix}:{local}")
        if self.pos < len(self.text) and self.text[self.pos] == "@":
            self.pos += 1
            tag = self._name(allow_leading_digit=True)
            if not tag:
                raise self.error("language tag")
            return Literal(lexical, lang=tag)
        return Literal(lexical)

    def next_token(self) -> _Token:
        # one token at a time, so dialect violations surface before any
        # characters after them get scanned (FILTER(...) and the like)
        self._skip_ws()
        pos = self.pos
        if self.pos >= len(self.text):
            return _Token("eof", None, pos)
        ch = self.text[self.pos]
        if ch == "<":
            return _Token("iri", self._iri(), pos)
        if ch == '"':
            return _Token("literal", self._literal(), pos)
        if ch == "?":
            self.pos += 1
            name = self._name()
            if not name:
                raise self.error("variable name after '?'")
            return _Token("var", name, pos)
        if ch in _PUNCT:
            self.pos += 1
            return _Token("punct", ch, pos)
        if ch == ":" or _is_name_start(ch):
            prefix = self._name()
            if self.pos < len(self.text) and self.text[self.pos] == ":":
                self.pos += 1
                local = self._name(allow_leading_digit=True)
                return _Token("pname", (prefix, local), pos)
            return _Token("ident", prefix, pos)
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return _Token("num", int(self.text[start : self.pos]), pos)
        raise self.error("a query token")


# --- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, scanner: _Scanner):
        self.scanner = scanner
        self._pending: _Token | None = None
        self.prefixes: dict[str, str] = {}

    @property
    def tok(self) -> _Token:
        if self._pending is None:
            self._pending = self.scanner.next_token()
        return self._pending

    def advance(self) -> _Token:
        t = self.tok
        self._pending = None
        return t

    def fail(self, expected: str):
        t = self.tok
        if t.kind == "ident" and t.value.lower() in _UNSUPPORTED:
            raise UnsupportedFeatureError(t.value.upper())
        if t.kind == "punct" and t.value == "{":
            raise UnsupportedFeatureError("subquery")
        raise SparqlSyntaxError(t.pos, expected)

    def at_keyword(self, kw: str) -> bool:
        t = self.tok
        return t.kind == "ident" and t.value.lower() == kw

    def accept_keyword(self, kw: str) -> bool:
        if self.at_keyword(kw):
            self.advance()
            return True
        return False

    def expect_keyword(self, kw: str) -> None:
        if not self.accept_keyword(kw):
            self.fail(f"keyword {kw.upper()}")

    def accept_punct(self, ch: str) -> bool:
        if self.tok.kind == "punct" and self.tok.value == ch:
            self.advance()
            return True
        return False

    def expect_punct(self, ch: str) -> None:
        if not self.accept_punct(ch):
            self.fail(f"'{ch}'")

    def expand_pname(self, prefix: str, local: str) -> Iri:
        if prefix not in self.prefixes:
            raise UnknownPrefixError(prefix)
        return Iri(self.prefixes[prefix] + local)

    def resolve_literal(self, lit: Literal) -> Literal:
        if lit.datatype and lit.datatype.startswith("\x00"):
            prefix, _, local = lit.datatype[1:].partition(":")
            return Literal(lit.lexical, datatype=self.expand_pname(prefix, local).value)
        return lit

    # grammar productions -----------------------------------------------------

    def prologue(self) -> None:
        while self.accept_keyword("prefix"):
            t = self.tok
            if t.kind != "pname" or t.value[1] != "":
                self.fail("prefix name ending in ':'")
            self.advance()
            it = self.tok
            if it.kind != "iri":
                self.fail("IRI for prefix")
            self.advance()
            self.prefixes[t.value[0]] = it.value.value

    def projection(self) -> Projection:
        t = self.tok
        expr: Expr
        if t.kind == "var":
            self.advance()
            expr = VarExpr(t.value)
        elif t.kind == "ident" and t.value.lower() in ("str", "count"):
            fn = t.value.lower()
            self.advance()
            self.expect_punct("(")
            vt = self.tok
            if vt.kind != "var":
                self.fail("variable inside function call")
            self.advance()
            self.expect_punct(")")
            expr = StrExpr(vt.value) if fn == "str" else CountExpr(vt.value)
        else:
            self.fail("projection variable or str()/count()")
        alias: str | None = None
        if self.accept_keyword("as"):
            at = self.tok
            if at.kind != "var":
                self.fail("alias variable after AS")
            self.advance()
            alias = at.value
        if not isinstance(expr, VarExpr) and alias is None:
            self.fail("AS alias for a function projection")
        return Projection(expr, alias)

    def term(self, position: str) -> Var | Term:
        t = self.tok
        if t.kind == "var":
            self.advance()
            return Var(t.value)
        if t.kind == "iri":
            self.advance()
            return t.value
        if t.kind == "pname":
            self.advance()
            return self.expand_pname(*t.value)
        if position == "predicate" and t.kind == "ident" and t.value == "a":
            self.advance()
            return Iri(RDF_TYPE)
        if position == "object" and t.kind == "literal":
            self.advance()
            return self.resolve_literal(t.value)
        self.fail(f"{position} term")

    def pattern_list(self) -> list[TriplePattern]:
        patterns: list[TriplePattern] = []
        while True:
            subject = self.term("subject")
            if isinstance(subject, Literal):  # unreachable; term() rejects
                self.fail("subject term")
            while True:
                pred = self.term("predicate")
                while True:
                    obj = self.term("object")
                    patterns.append(TriplePattern(subject, pred, obj))
                    if not self.accept_punct(","):
                        break
                if not self.accept_punct(";"):
                    break
            if self.accept_punct("."):
                if self.tok.kind == "punct" and self.tok.value == "}":
                    break
                continue
            break
        return patterns

    def order_clause(self) -> tuple[OrderKey, ...]:
        if not self.accept_keyword("order"):
            return ()
        self.expect_keyword("by")
        keys: list[OrderKey] = []
        while True:
            if self.at_keyword("asc") or self.at_keyword("desc"):
                ascending = self.tok.value.lower() == "asc"
                self.advance()
                self.expect_punct("(")
                vt = self.tok
                if vt.kind != "var":
                    self.fail("variable in ORDER BY")
                self.advance()
                self.expect_punct(")")
                keys.append(OrderKey(vt.value, ascending))
            elif self.tok.kind == "var":
                keys.append(OrderKey(self.advance().value, True))
            else:
                break
        if not keys:
            self.fail("ORDER BY key")
        return tuple(keys)

    def query(self) -> SelectQuery:
        self.prologue()
        self.expect_keyword("select")
        distinct = self.accept_keyword("distinct")
        projections: list[Projection] = []
        while not self.at_keyword("where"):
            if self.tok.kind == "eof":
                self.fail("keyword WHERE")
            projections.append(self.projection())
        if not projections:
            self.fail("at least one projection")
        self.expect_keyword("where")
        self.expect_punct("{")
        where = self.pattern_list()
        self.expect_punct("}")
        order_by = self.order_clause()
        limit: int | None = None
        if self.accept_keyword("limit"):
            t = self.tok
            if t.kind != "num":
                self.fail("integer after LIMIT")
            self.advance()
            limit = t.value
        if self.tok.kind != "eof":
            self.fail("end of query")

        names = [p.output_name for p in projections]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise SparqlSyntaxError(self.tok.pos, f"unique projection names (duplicate ?{dup})")
        return SelectQuery(
            projections=tuple(projections),
            where=tuple(where),
            distinct=distinct,
            order_by=order_by,
            limit=limit,
            prefixes=tuple(sorted(self.prefixes.items())),
        )


def parse_query(text: str) -> SelectQuery:
    """Parse a query in the restricted dialect into an AST."""
    return _Parser(_Scanner(text)).query()
