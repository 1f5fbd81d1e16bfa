"""In-memory triple store with SPO/POS/OSP indexes.

The store is immutable once built, so lookups need no locking and the
HTTP endpoint can serve concurrent readers over a shared instance.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .terms import Iri, Term

Triple = tuple[Iri, Iri, Term]


def _index3(triples: Iterable[Triple], order: tuple[int, int, int]) -> dict:
    idx: dict = {}
    for t in triples:
        a, b, c = t[order[0]], t[order[1]], t[order[2]]
        idx.setdefault(a, {}).setdefault(b, set()).add(c)
    return idx


class TripleSet:
    """A set of (subject, predicate, object) triples with three access paths."""

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set(triples)
        for s, p, _o in self._triples:
            if not isinstance(s, Iri) or not isinstance(p, Iri):
                raise TypeError("subjects and predicates must be IRIs")
        self._spo = _index3(self._triples, (0, 1, 2))
        self._pos = _index3(self._triples, (1, 2, 0))
        self._osp = _index3(self._triples, (2, 0, 1))

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TripleSet) and self._triples == other._triples

    def match(
        self,
        s: Iri | None = None,
        p: Iri | None = None,
        o: Term | None = None,
    ) -> Iterator[Triple]:
        """Yield triples matching the pattern; None is a wildcard.

        Each call picks the index keyed on the bound positions, so a lookup
        never scans more than the candidates sharing those terms.
        """
        if s is not None and p is not None:
            for obj in self._spo.get(s, {}).get(p, ()):
                if o is None or o == obj:
                    yield (s, p, obj)
        elif p is not None and o is not None:
            for subj in self._pos.get(p, {}).get(o, ()):
                yield (subj, p, o)
        elif s is not None and o is not None:
            for pred in self._osp.get(o, {}).get(s, ()):
                yield (s, pred, o)
        elif s is not None:
            for pred, objs in self._spo.get(s, {}).items():
                for obj in objs:
                    yield (s, pred, obj)
        elif p is not None:
            for obj, subjs in self._pos.get(p, {}).items():
                for subj in subjs:
                    yield (subj, p, obj)
        elif o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield (subj, pred, o)
        else:
            yield from self._triples

    def subjects_of_type(self, cls: Iri) -> set[Iri]:
        from .terms import RDF_TYPE

        return {s for s, _p, _o in self.match(None, Iri(RDF_TYPE), cls)}
