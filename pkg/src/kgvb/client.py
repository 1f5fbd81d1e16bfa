"""HTTP client for SPARQL-protocol endpoints (embedded or remote)."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import requests

from .results import ResultTable
from .terms import Iri, Literal, Term

DEFAULT_TIMEOUT_MS = 10_000
MAX_TIMEOUT_MS = 60_000
DEFAULT_MAX_RESPONSE_BYTES = 4 * 1024 * 1024


class ClientError(Exception):
    pass


class QueryTimeout(ClientError):
    def __init__(self, elapsed_ms: int):
        super().__init__(f"endpoint did not answer within {elapsed_ms} ms")
        self.elapsed_ms = elapsed_ms


class HttpStatusError(ClientError):
    def __init__(self, code: int, body_snippet: str):
        super().__init__(f"endpoint returned HTTP {code}: {body_snippet}")
        self.code = code
        self.body_snippet = body_snippet


class NetworkError(ClientError):
    def __init__(self, reason: str):
        super().__init__(f"network failure: {reason}")
        self.reason = reason


class OversizedResponseError(ClientError):
    def __init__(self, limit: int):
        super().__init__(f"response exceeded {limit} bytes")
        self.limit = limit


class MalformedResultsError(ClientError):
    def __init__(self, detail: str):
        super().__init__(f"malformed results document: {detail}")
        self.detail = detail


@dataclass(frozen=True)
class EndpointConfig:
    url: str
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    max_response_bytes: int = DEFAULT_MAX_RESPONSE_BYTES
    use_get: bool = False  # some public endpoints only accept GET

    def __post_init__(self) -> None:
        if not self.url.startswith(("http://", "https://")):
            raise ValueError(f"endpoint url must be absolute http(s): {self.url!r}")
        if "?" in self.url:
            raise ValueError("endpoint url must not carry a query string")
        if not 0 < self.timeout_ms <= MAX_TIMEOUT_MS:
            raise ValueError(f"timeout_ms must be in (0, {MAX_TIMEOUT_MS}]")
        if self.max_response_bytes <= 0:
            raise ValueError("max_response_bytes must be positive")


def parse_results_json(doc: str) -> ResultTable:
    """Decode a SPARQL results JSON document into a ResultTable."""
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise MalformedResultsError(f"not JSON: {exc}") from exc
    if not isinstance(data, dict) or "head" not in data or "results" not in data:
        raise MalformedResultsError("missing head/results")
    head_vars = data["head"].get("vars") if isinstance(data["head"], dict) else None
    if not isinstance(head_vars, list) or not all(isinstance(v, str) for v in head_vars):
        raise MalformedResultsError("head.vars missing or not a list of names")
    bindings = data["results"].get("bindings") if isinstance(data["results"], dict) else None
    if not isinstance(bindings, list):
        raise MalformedResultsError("results.bindings missing")

    rows: list[dict[str, Term]] = []
    for i, binding in enumerate(bindings):
        if not isinstance(binding, dict):
            raise MalformedResultsError(f"binding {i} is not an object")
        row: dict[str, Term] = {}
        for name, obj in binding.items():
            if not isinstance(obj, dict) or "type" not in obj or "value" not in obj:
                raise MalformedResultsError(f"binding {i} term {name!r} malformed")
            kind = obj["type"]
            if kind == "uri":
                row[name] = Iri(obj["value"])
            elif kind == "literal":
                row[name] = Literal(
                    obj["value"], datatype=obj.get("datatype"), lang=obj.get("xml:lang")
                )
            else:
                raise MalformedResultsError(f"unsupported term type {kind!r}")
        rows.append(row)
    return ResultTable(vars=list(head_vars), rows=rows)


class SparqlClient:
    """Stateless per-call client; safe to share across threads."""

    def __init__(self, config: EndpointConfig):
        self.config = config

    def execute(self, query: str) -> ResultTable:
        if not query:
            raise ValueError("query must be non-empty")
        cfg = self.config
        timeout_s = cfg.timeout_ms / 1000.0
        headers = {"Accept": "application/sparql-results+json"}
        started = time.monotonic()
        try:
            if cfg.use_get:
                resp = requests.get(
                    cfg.url, params={"query": query}, headers=headers,
                    timeout=timeout_s, stream=True,
                )
            else:
                resp = requests.post(
                    cfg.url, data={"query": query}, headers=headers,
                    timeout=timeout_s, stream=True,
                )
        except requests.exceptions.Timeout as exc:
            raise QueryTimeout(int((time.monotonic() - started) * 1000)) from exc
        except requests.exceptions.RequestException as exc:
            raise NetworkError(str(exc)) from exc

        with resp:
            try:
                chunks = []
                size = 0
                for chunk in resp.iter_content(chunk_size=65536):
                    size += len(chunk)
                    if size > cfg.max_response_bytes:
                        raise OversizedResponseError(cfg.max_response_bytes)
                    chunks.append(chunk)
            except requests.exceptions.Timeout as exc:
                raise QueryTimeout(int((time.monotonic() - started) * 1000)) from exc
            except requests.exceptions.RequestException as exc:
                raise NetworkError(str(exc)) from exc
            body = b"".join(chunks).decode("utf-8", errors="replace")
            if resp.status_code != 200:
                raise HttpStatusError(resp.status_code, body[:200])
        return parse_results_json(body)
