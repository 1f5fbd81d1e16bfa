"""Utterance normalization, pattern matching, and slot resolution.

Matching is whole-utterance: a pattern matches only when its literals align
token for token and every slot swallows at least one token.  When several
patterns match, the one with the most literal tokens wins (first declared
wins ties).  Slot spans resolve against the gazetteer exactly, by synonym,
or by closest Levenshtein distance when that minimum is unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .interaction_model import CompiledMatcher, UtterancePattern

_APOSTROPHES = {"'", "’"}


def normalize(text: str) -> list[str]:
    """Lowercase, drop apostrophes, turn everything else non-alphanumeric into spaces."""
    out: list[str] = []
    for ch in text.lower():
        if ch in _APOSTROPHES:
            continue
        out.append(ch if ch.isalnum() else " ")
    return "".join(out).split()


def normalize_join(text: str) -> str:
    return " ".join(normalize(text))


class MatchKind(Enum):
    EXACT = "exact"
    SYNONYM = "synonym"
    FUZZY = "fuzzy"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class SlotResolution:
    raw_span: str
    match_kind: MatchKind
    entity_id: str | None = None
    canonical_value: str | None = None
    distance: int | None = None

    @property
    def resolved(self) -> bool:
        return self.match_kind is not MatchKind.UNRESOLVED


@dataclass(frozen=True)
class MatchResult:
    intent_name: str
    slot_bindings: dict[str, SlotResolution]
    literal_count: int
    pattern_index: int


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def fuzzy_threshold(span: str) -> int:
    return max(1, len(span) // 8)


def resolve_slot(slot_index: dict[str, tuple[str, str, str]], raw_span: str) -> SlotResolution:
    """Resolve a raw slot span against one slot type's gazetteer index."""
    key = normalize_join(raw_span)
    if not key:
        return SlotResolution(raw_span, MatchKind.UNRESOLVED)
    hit = slot_index.get(key)
    if hit is not None:
        entity_id, canonical, kind = hit
        return SlotResolution(
            raw_span,
            MatchKind.EXACT if kind == "exact" else MatchKind.SYNONYM,
            entity_id=entity_id,
            canonical_value=canonical,
        )
    threshold = fuzzy_threshold(key)
    best = threshold + 1
    best_entities: set[str] = set()
    best_hit: tuple[str, str, str] | None = None
    for surface, entry in slot_index.items():
        if abs(len(surface) - len(key)) > threshold:
            continue
        dist = levenshtein(key, surface)
        if dist < best:
            best = dist
            best_entities = {entry[0]}
            best_hit = entry
        elif dist == best:
            best_entities.add(entry[0])
    if best_hit is not None and best <= threshold and len(best_entities) == 1:
        return SlotResolution(
            raw_span,
            MatchKind.FUZZY,
            entity_id=best_hit[0],
            canonical_value=best_hit[1],
            distance=best,
        )
    return SlotResolution(raw_span, MatchKind.UNRESOLVED)


def _align(pattern: "UtterancePattern", tokens: list[str]) -> dict[str, str] | None:
    """Try to cover the whole token list; returns slot name -> raw span."""
    from .interaction_model import Literal, SlotRef

    spans: dict[str, str] = {}
    i = 0
    seq = pattern.tokens
    for k, tok in enumerate(seq):
        if isinstance(tok, Literal):
            if i >= len(tokens) or tokens[i] != tok.word:
                return None
            i += 1
            continue
        assert isinstance(tok, SlotRef)
        nxt = seq[k + 1] if k + 1 < len(seq) else None
        if nxt is None:
            if i >= len(tokens):
                return None
            spans[tok.slot_name] = " ".join(tokens[i:])
            i = len(tokens)
        else:
            # the model validator guarantees the next token is a literal;
            # the span ends at its first occurrence (shortest span wins)
            assert isinstance(nxt, Literal)
            j = i + 1
            while j < len(tokens) and tokens[j] != nxt.word:
                j += 1
            if j >= len(tokens):
                return None
            spans[tok.slot_name] = " ".join(tokens[i:j])
            i = j
    return spans if i == len(tokens) else None


def match(matcher: "CompiledMatcher", tokens: list[str]) -> MatchResult | None:
    """Find the winning pattern for a normalized token list, or None."""
    best: tuple[int, int, str, dict[str, str]] | None = None
    for index, (intent_name, pattern, literal_count) in enumerate(matcher.patterns):
        spans = _align(pattern, tokens)
        if spans is None:
            continue
        if best is None or literal_count > best[0]:
            best = (literal_count, index, intent_name, spans)
    if best is None:
        return None
    literal_count, index, intent_name, spans = best
    slot_types = matcher.intent_slots.get(intent_name, {})
    bindings = {
        name: resolve_slot(matcher.slot_index.get(slot_types.get(name, ""), {}), span)
        for name, span in spans.items()
    }
    return MatchResult(
        intent_name=intent_name,
        slot_bindings=bindings,
        literal_count=literal_count,
        pattern_index=index,
    )
