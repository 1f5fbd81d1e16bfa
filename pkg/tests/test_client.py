import json
import socket
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from kgvb.client import (
    EndpointConfig,
    HttpStatusError,
    MalformedResultsError,
    NetworkError,
    OversizedResponseError,
    QueryTimeout,
    SparqlClient,
    parse_results_json,
)
from kgvb.evaluator import evaluate
from kgvb.results import canonical_results_bytes
from kgvb.sparql import parse_query
from kgvb.terms import Iri, Literal


def test_parse_empty_results():
    table = parse_results_json('{"head":{"vars":["s"]},"results":{"bindings":[]}}')
    assert table.vars == ["s"]
    assert table.rows == []


def test_parse_terms():
    doc = json.dumps(
        {
            "head": {"vars": ["a", "b", "c"]},
            "results": {
                "bindings": [
                    {
                        "a": {"type": "uri", "value": "http://x"},
                        "b": {"type": "literal", "value": "t", "xml:lang": "en"},
                        "c": {
                            "type": "literal",
                            "value": "1",
                            "datatype": "http://www.w3.org/2001/XMLSchema#integer",
                        },
                    },
                    {"a": {"type": "uri", "value": "http://y"}},
                ]
            },
        }
    )
    table = parse_results_json(doc)
    assert table.rows[0]["a"] == Iri("http://x")
    assert table.rows[0]["b"] == Literal("t", lang="en")
    assert table.rows[0]["c"] == Literal("1", datatype="http://www.w3.org/2001/XMLSchema#integer")
    assert "b" not in table.rows[1]  # unbound stays absent


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        "{}",
        '{"head":{},"results":{"bindings":[]}}',
        '{"head":{"vars":["s"]},"results":{}}',
        '{"head":{"vars":["s"]},"results":{"bindings":[{"s":{"type":"bnode","value":"b0"}}]}}',
        '{"head":{"vars":["s"]},"results":{"bindings":[{"s":{"value":"x"}}]}}',
    ],
)
def test_malformed_results_rejected(doc):
    with pytest.raises(MalformedResultsError):
        parse_results_json(doc)


def test_execute_round_trip(client, store):
    query = "SELECT ?s WHERE { ?s ?p ?o } LIMIT 1"
    table = client.execute(query)
    assert len(table.rows) == 1


def test_loopback_equals_direct_evaluate(client, store):
    query = (
        "PREFIX dcterms: <http://purl.org/dc/terms/>\n"
        "SELECT ?d ?t WHERE { ?d dcterms:title ?t } ORDER BY ?t LIMIT 10"
    )
    via_http = client.execute(query)
    direct = evaluate(store, parse_query(query))
    assert canonical_results_bytes(via_http) == canonical_results_bytes(direct)


def test_closed_port_is_network_error():
    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()  # nothing listens here now
    client = SparqlClient(EndpointConfig(url=f"http://127.0.0.1:{port}/sparql", timeout_ms=2000))
    with pytest.raises(NetworkError):
        client.execute("SELECT ?s WHERE { ?s ?p ?o }")


class _SlowHandler(BaseHTTPRequestHandler):
    delay_s = 0.0
    body = b'{"head":{"vars":[]},"results":{"bindings":[]}}'
    status = 200

    def log_message(self, *args):
        pass

    def do_POST(self):
        length = int(self.headers.get("Content-Length") or 0)
        self.rfile.read(length)
        time.sleep(type(self).delay_s)
        self.send_response(type(self).status)
        self.send_header("Content-Type", "application/sparql-results+json")
        self.send_header("Content-Length", str(len(type(self).body)))
        self.end_headers()
        self.wfile.write(type(self).body)


@pytest.fixture()
def stub_server():
    handlers = {}

    def start(**attrs):
        handler = type("Stub", (_SlowHandler,), attrs)
        server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        handlers["server"] = server
        return f"http://127.0.0.1:{server.server_address[1]}/sparql"

    yield start
    server = handlers.get("server")
    if server is not None:
        server.shutdown()
        server.server_close()


def test_timeout_honored(stub_server):
    url = stub_server(delay_s=0.7)
    client = SparqlClient(EndpointConfig(url=url, timeout_ms=500))
    started = time.monotonic()
    with pytest.raises(QueryTimeout):
        client.execute("SELECT ?s WHERE { ?s ?p ?o }")
    assert time.monotonic() - started < 5


def test_oversized_response_rejected(stub_server):
    big = json.dumps(
        {"head": {"vars": ["s"]}, "results": {"bindings": [{"s": {"type": "literal", "value": "x" * 4096}}] * 64}}
    ).encode()
    url = stub_server(body=big)
    client = SparqlClient(EndpointConfig(url=url, max_response_bytes=1024))
    with pytest.raises(OversizedResponseError):
        client.execute("SELECT ?s WHERE { ?s ?p ?o }")


def test_http_status_error(stub_server):
    url = stub_server(status=500, body=b"boom")
    client = SparqlClient(EndpointConfig(url=url))
    with pytest.raises(HttpStatusError) as exc:
        client.execute("SELECT ?s WHERE { ?s ?p ?o }")
    assert exc.value.code == 500
    assert "boom" in exc.value.body_snippet


def test_empty_query_rejected(client):
    with pytest.raises(ValueError):
        client.execute("")


@pytest.mark.parametrize(
    "kwargs",
    [
        {"url": "ftp://example.org/sparql"},
        {"url": "http://example.org/sparql?x=1"},
        {"url": "http://example.org/sparql", "timeout_ms": 0},
        {"url": "http://example.org/sparql", "timeout_ms": 60_001},
        {"url": "http://example.org/sparql", "max_response_bytes": 0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        EndpointConfig(**kwargs)
