"""Embedded SPARQL-protocol endpoint over an in-memory TripleSet.

Speaks the protocol subset the client uses: GET /sparql?query=... and
POST /sparql with a form-encoded body, answering SPARQL results JSON.
GET /health reports the triple count, mirroring the status probe one
would run against a standalone server.
"""

from __future__ import annotations

import errno
import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from . import evaluator, sparql
from .results import table_to_json
from .store import TripleSet

log = logging.getLogger(__name__)


class PortInUseError(Exception):
    def __init__(self, port: int):
        super().__init__(f"port {port} is already in use")
        self.port = port


class EndpointHandle:
    """A running endpoint; close() shuts it down and joins the server thread."""

    def __init__(self, server: ThreadingHTTPServer, thread: threading.Thread):
        self._server = server
        self._thread = thread

    @property
    def port(self) -> int:
        return self._server.server_address[1]

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}/sparql"

    @property
    def request_count(self) -> int:
        return self._server.query_requests  # type: ignore[attr-defined]

    def close(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)

    def __enter__(self) -> "EndpointHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _make_handler(store: TripleSet):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # route through logging, not stderr
            log.debug("%s %s", self.address_string(), fmt % args)

        def _send(self, code: int, payload: dict, content_type="application/json") -> None:
            body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
            self.send_response(code)
            self.send_header("Content-Type", f"{content_type}; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _run_query(self, query: str) -> None:
            with self.server.count_lock:  # type: ignore[attr-defined]
                self.server.query_requests += 1  # type: ignore[attr-defined]
            try:
                ast = sparql.parse_query(query)
                table = evaluator.evaluate(store, ast)
            except (sparql.SparqlSyntaxError, sparql.UnknownPrefixError,
                    sparql.UnsupportedFeatureError, evaluator.UnboundVariableError) as exc:
                self._send(400, {"error": str(exc)})
                return
            except Exception:
                log.exception("query evaluation failed")
                self._send(500, {"error": "internal error"})
                return
            self._send(200, table_to_json(table), content_type="application/sparql-results+json")

        def do_GET(self):
            parts = urlsplit(self.path)
            if parts.path == "/health":
                self._send(200, {"triples": len(store)})
                return
            if parts.path == "/sparql":
                params = parse_qs(parts.query)
                queries = params.get("query")
                if not queries:
                    self._send(400, {"error": "missing query parameter"})
                    return
                self._run_query(queries[0])
                return
            self._send(404, {"error": "not found"})

        def do_POST(self):
            parts = urlsplit(self.path)
            if parts.path != "/sparql":
                self._send(404, {"error": "not found"})
                return
            length = int(self.headers.get("Content-Length") or 0)
            body = self.rfile.read(length).decode("utf-8")
            params = parse_qs(body)
            queries = params.get("query")
            if not queries:
                self._send(400, {"error": "missing query parameter"})
                return
            self._run_query(queries[0])

    return Handler


def serve(store: TripleSet, port: int = 0, host: str = "127.0.0.1") -> EndpointHandle:
    """Start serving the store; port 0 picks a free port. Caller must close()."""
    handler = _make_handler(store)
    try:
        server = ThreadingHTTPServer((host, port), handler)
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            raise PortInUseError(port) from exc
        raise
    server.daemon_threads = True
    server.query_requests = 0  # type: ignore[attr-defined]
    server.count_lock = threading.Lock()  # type: ignore[attr-defined]
    thread = threading.Thread(target=server.serve_forever, name="sparql-endpoint", daemon=True)
    thread.start()
    return EndpointHandle(server, thread)
