"""Webhook-compatible skill: envelope decoding, session state, intent dispatch.

handle_request never raises for a decodable envelope; every failure turns
into an apology sentence plus a machine-readable ``error`` object so the
skill always answers.  The ``converse`` front door adds the NLU step for
plain-text clients (CLI, web console) and keeps their sessions server-side.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import engine, nlu, printers
from .client import ClientError
from .engine import Budget, Catalogue, IntentResult
from .interaction_model import CompiledMatcher
from .ssml import render_ssml

FALLBACK_INTENT = "FallbackIntent"

HELP_TEXT = (
    "You can ask me things like: what genes are associated with asthma; "
    "what genes are associated with several diseases; what diseases are "
    "associated with a kinase; how many publications support the association "
    "between TP53 and breast carcinoma; is there evidence that TP53 is "
    "associated with breast carcinoma; or say, give me information about "
    "asthma. What would you like to know?"
)

REPROMPT_TEXT = "You can ask about genes, diseases, or the evidence connecting them."
DID_NOT_UNDERSTAND = "Sorry, I didn't understand that. Say help to hear what I can answer."


class EnvelopeError(Exception):
    """Request body is not a usable skill request envelope."""


@dataclass(frozen=True)
class SkillRequest:
    request_type: str
    session_id: str
    new_session: bool
    attributes: dict
    intent_name: str = ""
    slots: dict = field(default_factory=dict)
    reason: str = ""
    request_id: str = ""
    timestamp: str = ""


@dataclass
class SessionState:
    focus_disease: tuple[str, str] | None = None  # (entity id, title)
    focus_gene: tuple[str, str] | None = None  # (entity id, symbol)
    turn_count: int = 0

    def to_attributes(self) -> dict:
        out: dict = {"turnCount": str(self.turn_count)}
        if self.focus_disease:
            out["focusDiseaseId"] = self.focus_disease[0]
            out["focusDiseaseTitle"] = self.focus_disease[1]
        if self.focus_gene:
            out["focusGeneId"] = self.focus_gene[0]
            out["focusGeneSymbol"] = self.focus_gene[1]
        return out

    @classmethod
    def from_attributes(cls, attributes) -> "SessionState":
        state = cls()
        if not isinstance(attributes, dict):
            return state
        try:
            state.turn_count = max(0, int(attributes.get("turnCount", 0)))
        except (TypeError, ValueError):
            state.turn_count = 0
        d_id, d_title = attributes.get("focusDiseaseId"), attributes.get("focusDiseaseTitle")
        if isinstance(d_id, str) and isinstance(d_title, str) and d_id and d_title:
            state.focus_disease = (d_id, d_title)
        g_id, g_sym = attributes.get("focusGeneId"), attributes.get("focusGeneSymbol")
        if isinstance(g_id, str) and isinstance(g_sym, str) and g_id and g_sym:
            state.focus_gene = (g_id, g_sym)
        return state


def decode_request(data) -> SkillRequest:
    """Decode an envelope dict, defaulting leniently but rejecting the unusable."""
    if not isinstance(data, dict):
        raise EnvelopeError("envelope must be a JSON object")
    request = data.get("request")
    if not isinstance(request, dict):
        raise EnvelopeError("missing request object")
    request_type = request.get("type")
    if request_type not in ("LaunchRequest", "IntentRequest", "SessionEndedRequest"):
        raise EnvelopeError(f"unsupported request type {request_type!r}")

    session = data.get("session")
    session = session if isinstance(session, dict) else {}
    session_id = session.get("sessionId")
    session_id = session_id if isinstance(session_id, str) and session_id else "anonymous"
    attributes = session.get("attributes")
    attributes = attributes if isinstance(attributes, dict) else {}

    intent_name = ""
    slots: dict = {}
    if request_type == "IntentRequest":
        intent = request.get("intent")
        if not isinstance(intent, dict) or not isinstance(intent.get("name"), str) \
                or not intent.get("name"):
            raise EnvelopeError("IntentRequest without an intent name")
        intent_name = intent["name"]
        raw_slots = intent.get("slots")
        if isinstance(raw_slots, dict):
            for name, slot in raw_slots.items():
                if isinstance(slot, dict) and isinstance(slot.get("value"), str):
                    slots[str(name)] = slot["value"]

    return SkillRequest(
        request_type=request_type,
        session_id=session_id,
        new_session=bool(session.get("new", False)),
        attributes=attributes,
        intent_name=intent_name,
        slots=slots,
        reason=str(request.get("reason", "")),
        request_id=str(request.get("requestId", "")),
        timestamp=str(request.get("timestamp", "")),
    )


@dataclass
class ConverseResult:
    answer: str
    ssml: str
    intent: str | None
    slots: dict
    request: dict
    response: dict


def _apology(exc: Exception) -> str:
    if isinstance(exc, engine.MissingSlotError):
        if exc.raw_span:
            return f"Sorry, I don't recognize the {exc.name} called {exc.raw_span}."
        return f"Sorry, I need to know which {exc.name} you mean. Please name one."
    if isinstance(exc, engine.UnknownIntentError):
        return "Sorry, I can't help with that yet. Say help to hear what I can answer."
    if isinstance(exc, engine.LayerBudgetExceededError):
        return ("Sorry, that question needs a deeper chain of queries than I am "
                "allowed to run right now.")
    if isinstance(exc, engine.TimeBudgetExceededError):
        return "Sorry, the knowledge graph took too long to answer."
    if isinstance(exc, engine.EmptyLayerResultError):
        return "Sorry, I found nothing to build the next step of that question on."
    if isinstance(exc, (engine.LayerExecutionError, ClientError)):
        return "Sorry, I couldn't reach the knowledge graph. Please try again."
    return "Sorry, something went wrong while answering that."


def _error_code(exc: Exception) -> str:
    if isinstance(exc, engine.LayerExecutionError):
        exc = exc.cause
    name = type(exc).__name__
    return name[: -len("Error")] if name.endswith("Error") else name


class Skill:
    """One skill instance: compiled model + query engine + session registry."""

    def __init__(
        self,
        matcher: CompiledMatcher,
        catalogue: Catalogue,
        client,
        budget: Budget | None = None,
        spoken_limit: int = printers.SPOKEN_LIMIT,
        endpoint_url: str = "",
    ):
        self.matcher = matcher
        self.catalogue = catalogue
        self.client = client
        self.budget = budget or Budget()
        self.spoken_limit = spoken_limit
        self.endpoint_url = endpoint_url
        self._sessions: dict[str, dict] = {}
        self._session_locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._request_seq = 0

    # -- webhook path ----------------------------------------------------------

    def handle_envelope(self, data) -> dict:
        """Decode and handle; raises EnvelopeError only for undecodable bodies."""
        return self.handle_request(decode_request(data))

    def handle_request(self, req: SkillRequest) -> dict:
        state = SessionState.from_attributes(req.attributes)
        if req.request_type == "SessionEndedRequest":
            return self._respond("", state, should_end=True, reprompt=None)

        state.turn_count += 1
        if req.request_type == "LaunchRequest":
            text = (
                f"Welcome to {self.matcher.invocation_name}. Ask me about genes, "
                "diseases, and the publications connecting them. Say help for examples."
            )
            return self._respond(text, state, should_end=False)

        name = req.intent_name
        if name in ("StopIntent", "CancelIntent"):
            return self._respond("Goodbye.", state, should_end=True, reprompt=None)
        if name == "HelpIntent":
            return self._respond(HELP_TEXT, state, should_end=False)
        if name == FALLBACK_INTENT:
            return self._respond(DID_NOT_UNDERSTAND, state, should_end=False)

        try:
            text = self._answer_intent(name, req.slots, state)
            return self._respond(text, state, should_end=False)
        except Exception as exc:  # total availability: every failure speaks
            return self._respond(
                _apology(exc), state, should_end=False,
                error={"code": _error_code(exc), "message": str(exc)},
            )

    def _answer_intent(self, intent: str, raw_slots: dict, state: SessionState) -> str:
        slot_types = self.matcher.intent_slots.get(intent)
        if slot_types is None:
            raise engine.UnknownIntentError(intent)
        resolved: dict[str, str] = {}
        for slot_name, raw in raw_slots.items():
            slot_type = slot_types.get(slot_name)
            if slot_type is None or not raw:
                continue
            res = nlu.resolve_slot(self.matcher.slot_index.get(slot_type, {}), raw)
            if not res.resolved:
                # the user named something we cannot identify; answering about
                # the session focus instead would silently swap the entity
                raise engine.MissingSlotError(slot_name, raw)
            resolved[slot_name] = res.canonical_value
            if slot_type == "disease":
                state.focus_disease = (res.entity_id, res.canonical_value)
            elif slot_type == "gene":
                state.focus_gene = (res.entity_id, res.canonical_value)

        session_defaults: dict[str, str] = {}
        if state.focus_disease:
            session_defaults["disease"] = state.focus_disease[1]
        if state.focus_gene:
            session_defaults["gene"] = state.focus_gene[1]

        plan = engine.plan_for_intent(
            self.catalogue, self.matcher.intent_plans, intent, resolved, session_defaults
        )
        result: IntentResult = engine.execute_plan(plan, self.client, self.budget, self.catalogue)
        return printers.render_text(result, intent, self.spoken_limit)

    def _respond(
        self,
        text: str,
        state: SessionState,
        should_end: bool,
        reprompt: str | None = REPROMPT_TEXT,
        error: dict | None = None,
    ) -> dict:
        body: dict = {
            "version": "1.0",
            "sessionAttributes": state.to_attributes(),
            "response": {
                "outputSpeech": {
                    "type": "SSML",
                    "text": text,
                    "ssml": render_ssml(text),
                },
                "shouldEndSession": should_end,
            },
        }
        if reprompt and not should_end:
            body["response"]["reprompt"] = {
                "outputSpeech": {"type": "PlainText", "text": reprompt}
            }
        if error is not None:
            body["error"] = error
        return body

    # -- conversational path -----------------------------------------------------

    def _session_lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def converse(self, session_id: str, text: str) -> ConverseResult:
        """NLU + webhook round trip for one typed utterance against a stored session."""
        with self._session_lock(session_id):
            attributes = dict(self._sessions.get(session_id, {}))
            is_new = session_id not in self._sessions

            tokens = nlu.normalize(text)
            result = nlu.match(self.matcher, tokens) if tokens else None
            if result is None:
                intent_name = FALLBACK_INTENT
                slot_values: dict = {}
            else:
                intent_name = result.intent_name
                slot_values = {
                    name: res.raw_span for name, res in result.slot_bindings.items()
                }

            with self._registry_lock:
                self._request_seq += 1
                seq = self._request_seq
            envelope = {
                "version": "1.0",
                "session": {
                    "new": is_new,
                    "sessionId": session_id,
                    "attributes": attributes,
                },
                "request": {
                    "type": "IntentRequest",
                    "requestId": f"req-{seq}",
                    "timestamp": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
                    "intent": {
                        "name": intent_name,
                        "slots": {
                            name: {"name": name, "value": value}
                            for name, value in slot_values.items()
                        },
                    },
                },
            }
            response = self.handle_request(decode_request(envelope))
            self._sessions[session_id] = dict(response.get("sessionAttributes", {}))

        slots_out = {}
        if result is not None:
            for name, res in result.slot_bindings.items():
                slots_out[name] = {
                    "raw": res.raw_span,
                    "kind": res.match_kind.value,
                    "value": res.canonical_value,
                    "id": res.entity_id,
                }
                if res.distance is not None:
                    slots_out[name]["distance"] = res.distance
        speech = response["response"]["outputSpeech"]
        return ConverseResult(
            answer=speech["text"],
            ssml=speech["ssml"],
            intent=result.intent_name if result is not None else None,
            slots=slots_out,
            request=envelope,
            response=response,
        )

    def health(self) -> dict:
        return {
            "status": "ok",
            "endpoint": self.endpoint_url,
            "model": self.matcher.invocation_name,
        }
