"""HTTP front of the skill: webhook, conversational route, health, console."""

from __future__ import annotations

import errno
import json
import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import urlsplit

from .endpoint import PortInUseError
from .skill import EnvelopeError, Skill

log = logging.getLogger(__name__)


def to_json_bytes(obj) -> bytes:
    """The one serializer for every wire response, so envelope bytes are stable."""
    return json.dumps(obj, ensure_ascii=False).encode("utf-8")


class SkillServerHandle:
    def __init__(self, server: ThreadingHTTPServer, thread: threading.Thread):
        self._server = server
        self._thread = thread

    @property
    def port(self) -> int:
        return self._server.server_address[1]

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def wait(self) -> None:
        self._thread.join()

    def close(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)

    def __enter__(self) -> "SkillServerHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _make_handler(skill: Skill, console_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            log.debug("%s %s", self.address_string(), fmt % args)

        def _send_bytes(self, code: int, body: bytes, content_type: str) -> None:
            self.send_response(code)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _send_json(self, code: int, obj) -> None:
            self._send_bytes(code, to_json_bytes(obj), "application/json; charset=utf-8")

        def _read_json(self):
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length)
            try:
                return json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise EnvelopeError(f"body is not valid JSON: {exc}") from exc

        def do_GET(self):
            path = urlsplit(self.path).path
            if path == "/health":
                self._send_json(200, skill.health())
                return
            if console_dir is not None and (path == "/console" or path.startswith("/console/")):
                self._serve_console(path)
                return
            self._send_json(404, {"error": "not found"})

        def _serve_console(self, path: str) -> None:
            rel = path[len("/console"):].lstrip("/") or "index.html"
            target = (console_dir / rel).resolve()
            if not str(target).startswith(str(console_dir.resolve())) or not target.is_file():
                self._send_json(404, {"error": "not found"})
                return
            ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
            self._send_bytes(200, target.read_bytes(), ctype)

        def do_POST(self):
            path = urlsplit(self.path).path
            try:
                if path == "/alexa":
                    data = self._read_json()
                    body = skill.handle_envelope(data)
                    self._send_json(200, body)
                    return
                if path == "/converse":
                    data = self._read_json()
                    if not isinstance(data, dict) or not isinstance(data.get("sessionId"), str):
                        raise EnvelopeError("body must carry sessionId and text")
                    text = data.get("text")
                    if not isinstance(text, str):
                        raise EnvelopeError("text must be a string")
                    result = skill.converse(data["sessionId"], text)
                    self._send_json(
                        200,
                        {
                            "answer": result.answer,
                            "ssml": result.ssml,
                            "intent": result.intent,
                            "slots": result.slots,
                            "request": result.request,
                            "response": result.response,
                        },
                    )
                    return
            except EnvelopeError as exc:
                self._send_json(400, {"error": str(exc)})
                return
            except Exception:
                log.exception("unhandled service error")
                self._send_json(500, {"error": "internal error"})
                return
            self._send_json(404, {"error": "not found"})

    return Handler


def default_console_dir() -> Path | None:
    from .assets import repo_root

    root = repo_root()
    if root is not None:
        dist = root / "frontend" / "dist"
        if (dist / "index.html").is_file():
            return dist
    return None


def serve_skill(
    skill: Skill,
    port: int = 8080,
    host: str = "127.0.0.1",
    console_dir: Path | None = None,
) -> SkillServerHandle:
    handler = _make_handler(skill, console_dir)
    try:
        server = ThreadingHTTPServer((host, port), handler)
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            raise PortInUseError(port) from exc
        raise
    server.daemon_threads = True
    thread = threading.Thread(target=server.serve_forever, name="skill-service", daemon=True)
    thread.start()
    return SkillServerHandle(server, thread)
