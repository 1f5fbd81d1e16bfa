"""Basic-graph-pattern evaluation over the indexed TripleSet.

Pipeline: solve the BGP by pattern-at-a-time index joins, apply implicit
grouping when count() is projected, project, dedupe for DISTINCT, then
order and truncate.  Ordering is total: after the declared keys, rows are
compared by the lexical form of every projected column left to right, so
ranked answers are reproducible.
"""

from __future__ import annotations

from .results import ResultTable
from .sparql import CountExpr, Projection, SelectQuery, StrExpr, Var
from .store import TripleSet
from .terms import XSD_INTEGER, Iri, Literal, Term, lexical_form

Solution = dict[str, Term]


class UnboundVariableError(Exception):
    def __init__(self, name: str):
        super().__init__(f"variable ?{name} is not bound by the graph pattern")
        self.name = name


def _solve_bgp(store: TripleSet, patterns) -> list[Solution]:
    solutions: list[Solution] = [{}]
    for pat in patterns:
        if not solutions:
            return []
        nxt: list[Solution] = []
        for sol in solutions:
            probe = []
            for slot in (pat.s, pat.p, pat.o):
                if isinstance(slot, Var):
                    probe.append(sol.get(slot.name))
                else:
                    probe.append(slot)
            # literals can leak into subject/predicate probes through shared
            # variables; such probes match nothing, which is the right answer
            s = probe[0] if isinstance(probe[0], Iri) else None
            p = probe[1] if isinstance(probe[1], Iri) else None
            if probe[0] is not None and s is None:
                continue
            if probe[1] is not None and p is None:
                continue
            for triple in store.match(s, p, probe[2]):
                ext = dict(sol)
                consistent = True
                for slot, term in zip((pat.s, pat.p, pat.o), triple):
                    if isinstance(slot, Var):
                        prev = ext.get(slot.name)
                        if prev is None:
                            ext[slot.name] = term
                        elif prev != term:
                            consistent = False
                            break
                if consistent:
                    nxt.append(ext)
        solutions = nxt
    return solutions


def _eval_plain(proj: Projection, sol: Solution) -> Term:
    term = sol[proj.expr.var]
    if isinstance(proj.expr, StrExpr):
        return Literal(lexical_form(term))
    return term


def _project(ast: SelectQuery, solutions: list[Solution]) -> list[tuple[dict, Solution | None]]:
    """Rows paired with a representative solution (for ORDER BY on hidden vars)."""
    has_count = any(isinstance(p.expr, CountExpr) for p in ast.projections)
    if not has_count:
        return [
            ({p.output_name: _eval_plain(p, sol) for p in ast.projections}, sol)
            for sol in solutions
        ]

    plain = [p for p in ast.projections if not isinstance(p.expr, CountExpr)]
    counted = [p for p in ast.projections if isinstance(p.expr, CountExpr)]
    groups: dict[tuple, dict] = {}
    tallies: dict[tuple, list[int]] = {}
    for sol in solutions:
        key = tuple(_eval_plain(p, sol) for p in plain)
        if key not in groups:
            groups[key] = {p.output_name: v for p, v in zip(plain, key)}
            tallies[key] = [0] * len(counted)
        for k, p in enumerate(counted):
            if p.expr.var in sol:
                tallies[key][k] += 1
    out = []
    for key, row in groups.items():
        for k, p in enumerate(counted):
            row[p.output_name] = Literal(str(tallies[key][k]), datatype=XSD_INTEGER)
        out.append((row, None))
    return out


def _row_key(row: dict, names: list[str]) -> tuple:
    return tuple(lexical_form(row[n]) for n in names)


def _order_rows(ast: SelectQuery, pairs: list[tuple[dict, Solution | None]]) -> None:
    names = ast.output_names()
    count_cols = {
        p.output_name for p in ast.projections if isinstance(p.expr, CountExpr)
    }
    # total tie-break first, then each declared key from least to most significant
    pairs.sort(key=lambda pr: _row_key(pr[0], names))
    for key in reversed(ast.order_by):
        if key.var in count_cols:
            keyfn = lambda pr, v=key.var: int(pr[0][v].lexical)
        elif key.var in names:
            keyfn = lambda pr, v=key.var: lexical_form(pr[0][v])
        else:
            keyfn = lambda pr, v=key.var: lexical_form(pr[1][v])
        pairs.sort(key=keyfn, reverse=not key.ascending)


def evaluate(store: TripleSet, ast: SelectQuery) -> ResultTable:
    """Run a parsed query against the store."""
    bgp_vars = ast.pattern_variables()
    for proj in ast.projections:
        if proj.expr.var not in bgp_vars:
            raise UnboundVariableError(proj.expr.var)
    names = ast.output_names()
    has_count = any(isinstance(p.expr, CountExpr) for p in ast.projections)
    for key in ast.order_by:
        if key.var not in names and (has_count or key.var not in bgp_vars):
            raise UnboundVariableError(key.var)

    solutions = _solve_bgp(store, ast.where)
    pairs = _project(ast, solutions)

    if ast.distinct:
        seen: set[tuple] = set()
        deduped = []
        for row, sol in pairs:
            marker = tuple(row[n] for n in names)
            if marker not in seen:
                seen.add(marker)
                deduped.append((row, sol))
        pairs = deduped

    _order_rows(ast, pairs)
    rows = [row for row, _sol in pairs]
    if ast.limit is not None:
        rows = rows[: ast.limit]
    return ResultTable(vars=names, rows=rows)
