"""Skill interaction model: intents, sample utterances, slot gazetteers.

The model is a single JSON document (see models/disease-skill.json).  Slot
types may inline their values or pull them from a sibling file via
``valuesFrom``, which is how the large disease gazetteer ships.  Stop,
Cancel and Help are predefined and appended to every parsed model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .nlu import normalize_join

BUILTIN_INTENTS = {"StopIntent": "stop", "CancelIntent": "cancel", "HelpIntent": "help"}


class ModelError(Exception):
    pass


class MalformedJsonError(ModelError):
    def __init__(self, position: str, detail: str):
        super().__init__(f"{position}: {detail}")
        self.position = position
        self.detail = detail


class UnknownFieldError(ModelError):
    def __init__(self, path: str):
        super().__init__(f"unknown field {path}")
        self.path = path


class BadPlaceholderError(ModelError):
    def __init__(self, utterance: str, reason: str):
        super().__init__(f"bad placeholder in {utterance!r}: {reason}")
        self.utterance = utterance
        self.reason = reason


class InvalidModelError(ModelError):
    """compile() was called on a model that does not validate cleanly."""


@dataclass(frozen=True)
class Literal:
    word: str


@dataclass(frozen=True)
class SlotRef:
    slot_name: str


Token = Literal | SlotRef


@dataclass(frozen=True)
class UtterancePattern:
    tokens: tuple[Token, ...]
    source: str

    @property
    def literal_count(self) -> int:
        return sum(1 for t in self.tokens if isinstance(t, Literal))

    def slot_names(self) -> list[str]:
        return [t.slot_name for t in self.tokens if isinstance(t, SlotRef)]


@dataclass(frozen=True)
class SlotValue:
    canonical_value: str
    entity_id: str
    synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class SlotType:
    name: str
    entries: tuple[SlotValue, ...]


@dataclass(frozen=True)
class IntentDef:
    name: str
    slots: tuple[tuple[str, str], ...]  # (slot_name, slot_type_name)
    samples: tuple[UtterancePattern, ...]
    plan_id: str = ""


@dataclass(frozen=True)
class InteractionModel:
    invocation_name: str
    intents: tuple[IntentDef, ...]
    slot_types: tuple[SlotType, ...]


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str


MatchKind = str  # "exact" | "synonym" (index side); fuzzy decided at lookup time


@dataclass(frozen=True)
class CompiledMatcher:
    invocation_name: str
    patterns: tuple[tuple[str, UtterancePattern, int], ...]
    slot_index: dict[str, dict[str, tuple[str, str, MatchKind]]]
    intent_slots: dict[str, dict[str, str]]  # intent -> slot name -> slot type
    intent_plans: dict[str, str]

    def to_json_dict(self) -> dict:
        return {
            "invocationName": self.invocation_name,
            "patterns": [
                {
                    "intent": intent,
                    "tokens": [
                        {"lit": t.word} if isinstance(t, Literal) else {"slot": t.slot_name}
                        for t in pattern.tokens
                    ],
                    "literals": literals,
                }
                for intent, pattern, literals in self.patterns
            ],
            "slotIndex": {
                st: {k: list(v) for k, v in sorted(index.items())}
                for st, index in sorted(self.slot_index.items())
            },
            "intentSlots": {k: dict(sorted(v.items())) for k, v in sorted(self.intent_slots.items())},
            "intentPlans": dict(sorted(self.intent_plans.items())),
        }


def tokenize_sample(sample: str) -> UtterancePattern:
    """Split a sample utterance into literal words and {slot} references."""
    tokens: list[Token] = []
    pos = 0
    text = sample
    while pos < len(text):
        open_idx = text.find("{", pos)
        close_stray = text.find("}", pos)
        if open_idx == -1:
            if close_stray != -1:
                raise BadPlaceholderError(sample, "'}' without matching '{'")
            chunk = text[pos:]
            pos = len(text)
        else:
            if close_stray != -1 and close_stray < open_idx:
                raise BadPlaceholderError(sample, "'}' without matching '{'")
            chunk = text[pos:open_idx]
            pos = open_idx
        for word in normalize_join(chunk).split():
            tokens.append(Literal(word))
        if pos < len(text) and text[pos] == "{":
            close_idx = text.find("}", pos)
            if close_idx == -1:
                raise BadPlaceholderError(sample, "'{' without matching '}'")
            name = text[pos + 1 : close_idx].strip()
            if not name:
                raise BadPlaceholderError(sample, "empty slot name")
            if "{" in name:
                raise BadPlaceholderError(sample, "nested '{'")
            if not (name[0].isalpha() or name[0] == "_") or not all(
                c.isalnum() or c == "_" for c in name
            ):
                raise BadPlaceholderError(sample, f"slot name {name!r} is not an identifier")
            if tokens and isinstance(tokens[-1], SlotRef):
                raise BadPlaceholderError(sample, "adjacent slot references")
            tokens.append(SlotRef(name))
            pos = close_idx + 1
    return UtterancePattern(tuple(tokens), source=sample)


def _require_keys(obj: dict, allowed: set[str], required: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise UnknownFieldError(f"{path}.{key}")
    for key in required:
        if key not in obj:
            raise MalformedJsonError(path, f"missing required field {key!r}")


def _require_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise MalformedJsonError(path, "expected a string")
    return value


def _require_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise MalformedJsonError(path, "expected a list")
    return value


def _parse_slot_type(obj: dict, path: str, base_dir: Path | None) -> SlotType:
    if not isinstance(obj, dict):
        raise MalformedJsonError(path, "expected an object")
    _require_keys(obj, {"name", "values", "valuesFrom"}, {"name"}, path)
    name = _require_str(obj["name"], f"{path}.name")
    if "valuesFrom" in obj:
        if "values" in obj:
            raise MalformedJsonError(path, "give either values or valuesFrom, not both")
        rel = _require_str(obj["valuesFrom"], f"{path}.valuesFrom")
        if base_dir is None:
            raise MalformedJsonError(f"{path}.valuesFrom", "no base directory to resolve against")
        ref_path = base_dir / rel
        try:
            ref_doc = json.loads(ref_path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise MalformedJsonError(f"{path}.valuesFrom", f"file not found: {ref_path}") from None
        except json.JSONDecodeError as exc:
            raise MalformedJsonError(f"{ref_path}:{exc.pos}", exc.msg) from exc
        if not isinstance(ref_doc, dict):
            raise MalformedJsonError(str(ref_path), "expected an object")
        _require_keys(ref_doc, {"name", "values"}, {"values"}, str(ref_path))
        values = ref_doc["values"]
    else:
        if "values" not in obj:
            raise MalformedJsonError(path, "missing values")
        values = obj["values"]
    entries = []
    for i, val in enumerate(_require_list(values, f"{path}.values")):
        vpath = f"{path}.values[{i}]"
        if not isinstance(val, dict):
            raise MalformedJsonError(vpath, "expected an object")
        _require_keys(val, {"id", "value", "synonyms"}, {"id", "value"}, vpath)
        synonyms = tuple(
            _require_str(s, f"{vpath}.synonyms[{j}]")
            for j, s in enumerate(_require_list(val.get("synonyms", []), f"{vpath}.synonyms"))
        )
        entries.append(
            SlotValue(
                canonical_value=_require_str(val["value"], f"{vpath}.value"),
                entity_id=_require_str(val["id"], f"{vpath}.id"),
                synonyms=synonyms,
            )
        )
    return SlotType(name=name, entries=tuple(entries))


def parse_model(doc: str, base_dir: Path | str | None = None) -> InteractionModel:
    """Parse a model document; base_dir resolves valuesFrom gazetteer files."""
    base = Path(base_dir) if base_dir is not None else None
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise MalformedJsonError(f"offset {exc.pos}", exc.msg) from exc
    if not isinstance(data, dict):
        raise MalformedJsonError("$", "top level must be an object")
    _require_keys(data, {"invocationName", "intents", "slotTypes"},
                  {"invocationName", "intents"}, "$")

    invocation = _require_str(data["invocationName"], "$.invocationName")
    intents: list[IntentDef] = []
    for i, obj in enumerate(_require_list(data["intents"], "$.intents")):
        path = f"$.intents[{i}]"
        if not isinstance(obj, dict):
            raise MalformedJsonError(path, "expected an object")
        _require_keys(obj, {"name", "slots", "samples", "plan"}, {"name", "samples"}, path)
        name = _require_str(obj["name"], f"{path}.name")
        slots = []
        for j, slot in enumerate(_require_list(obj.get("slots", []), f"{path}.slots")):
            spath = f"{path}.slots[{j}]"
            if not isinstance(slot, dict):
                raise MalformedJsonError(spath, "expected an object")
            _require_keys(slot, {"name", "type"}, {"name", "type"}, spath)
            slots.append(
                (_require_str(slot["name"], f"{spath}.name"),
                 _require_str(slot["type"], f"{spath}.type"))
            )
        samples = tuple(
            tokenize_sample(_require_str(s, f"{path}.samples[{j}]"))
            for j, s in enumerate(_require_list(obj["samples"], f"{path}.samples"))
        )
        intents.append(
            IntentDef(
                name=name,
                slots=tuple(slots),
                samples=samples,
                plan_id=_require_str(obj.get("plan", ""), f"{path}.plan"),
            )
        )

    slot_types = tuple(
        _parse_slot_type(obj, f"$.slotTypes[{i}]", base)
        for i, obj in enumerate(_require_list(data.get("slotTypes", []), "$.slotTypes"))
    )

    # the fixed built-ins every skill answers
    for name, sample in BUILTIN_INTENTS.items():
        intents.append(IntentDef(name=name, slots=(), samples=(tokenize_sample(sample),)))

    return InteractionModel(
        invocation_name=invocation, intents=tuple(intents), slot_types=slot_types
    )


def load_model(path: Path | str) -> InteractionModel:
    path = Path(path)
    return parse_model(path.read_text(encoding="utf-8"), base_dir=path.parent)


def validate(model: InteractionModel) -> list[Violation]:
    """Check every model invariant; an empty list means the model is sound."""
    out: list[Violation] = []

    def flag(code: str, path: str, message: str) -> None:
        out.append(Violation(code, path, message))

    if not model.invocation_name:
        flag("EMPTY_INVOCATION_NAME", "$.invocationName", "invocation name must be non-empty")
    elif model.invocation_name != model.invocation_name.lower():
        flag("INVOCATION_NOT_LOWERCASE", "$.invocationName",
             f"invocation name {model.invocation_name!r} must be lowercase")

    declared_types = {}
    for i, st in enumerate(model.slot_types):
        path = f"$.slotTypes[{i}]"
        if st.name in declared_types:
            flag("DUPLICATE_SLOT_TYPE_NAME", path, f"slot type {st.name!r} declared twice")
        declared_types[st.name] = st
        seen_ids: set[str] = set()
        for j, entry in enumerate(st.entries):
            epath = f"{path}.values[{j}]"
            if not entry.canonical_value.strip():
                flag("EMPTY_CANONICAL_VALUE", epath, "canonical value must be non-empty")
            if entry.entity_id in seen_ids:
                flag("DUPLICATE_ENTITY_ID", epath, f"entity id {entry.entity_id!r} repeated")
            seen_ids.add(entry.entity_id)
            for k, syn in enumerate(entry.synonyms):
                if not syn.strip():
                    flag("EMPTY_SYNONYM", f"{epath}.synonyms[{k}]", "synonym must be non-empty")

    seen_intents: set[str] = set()
    for i, intent in enumerate(model.intents):
        path = f"$.intents[{i}]"
        if intent.name in seen_intents:
            if intent.name in BUILTIN_INTENTS:
                flag("BUILTIN_REDEFINED", path,
                     f"{intent.name} is predefined and cannot be redeclared")
            else:
                flag("DUPLICATE_INTENT_NAME", path, f"intent {intent.name!r} declared twice")
        seen_intents.add(intent.name)
        if intent.name in BUILTIN_INTENTS and intent.slots:
            flag("BUILTIN_WITH_SLOTS", path, f"{intent.name} must not declare slots")
        slot_names = set()
        for slot_name, type_name in intent.slots:
            slot_names.add(slot_name)
            if type_name not in declared_types:
                flag("UNDECLARED_SLOT_TYPE", f"{path}.slots",
                     f"slot {slot_name!r} uses undeclared type {type_name!r}")
        for j, pattern in enumerate(intent.samples):
            spath = f"{path}.samples[{j}]"
            if not pattern.tokens:
                flag("EMPTY_UTTERANCE", spath, "sample has no tokens")
            prev_slot = False
            for token in pattern.tokens:
                if isinstance(token, SlotRef):
                    if prev_slot:
                        flag("ADJACENT_SLOT_REFS", spath,
                             "two slot references with no literal between them")
                    prev_slot = True
                    if token.slot_name not in slot_names:
                        flag("UNDECLARED_SLOT", spath,
                             f"sample references undeclared slot {token.slot_name!r}")
                else:
                    prev_slot = False
    return out


def compile_model(model: InteractionModel) -> CompiledMatcher:
    """Freeze a validated model into the matcher the NLU layer runs against."""
    problems = validate(model)
    if problems:
        raise InvalidModelError(
            f"model has {len(problems)} violation(s); first: {problems[0].message}"
        )
    patterns = tuple(
        (intent.name, pattern, pattern.literal_count)
        for intent in model.intents
        for pattern in intent.samples
    )
    slot_index: dict[str, dict[str, tuple[str, str, str]]] = {}
    for st in model.slot_types:
        index: dict[str, tuple[str, str, str]] = {}
        for entry in st.entries:
            key = normalize_join(entry.canonical_value)
            if key:
                index[key] = (entry.entity_id, entry.canonical_value, "exact")
        for entry in st.entries:  # canonical forms take precedence over synonyms
            for syn in entry.synonyms:
                key = normalize_join(syn)
                if key and key not in index:
                    index[key] = (entry.entity_id, entry.canonical_value, "synonym")
        slot_index[st.name] = index
    intent_slots = {intent.name: dict(intent.slots) for intent in model.intents}
    intent_plans = {intent.name: intent.plan_id for intent in model.intents if intent.plan_id}
    return CompiledMatcher(
        invocation_name=model.invocation_name,
        patterns=patterns,
        slot_index=slot_index,
        intent_slots=intent_slots,
        intent_plans=intent_plans,
    )
