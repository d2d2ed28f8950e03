"""Local HTTP bridge for the browser demo.

Serves the static page bundle and exposes the engine over the same JSON
wire the op log uses: POST /api/session mounts a template and returns the
mount batch, POST /api/event forwards an event payload and returns the
resulting batch, GET /api/snapshot is the debug hook a renderer can
compare its own exported snapshot against. One process, one thread:
requests are handled strictly in order, so each event's ops are applied
before the next event arrives.
"""

import json
import pathlib
import secrets
from http.server import BaseHTTPRequestHandler, HTTPServer

from .reactive import ReactiveSystem, UpdateError
from .registry import DEFAULT_MODELS, TEMPLATES, prepare_model
from .template import EventPayload, mount

CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".map": "application/json",
    ".ico": "image/x-icon",
}


class Session:
    def __init__(self, name, model):
        self.system = ReactiveSystem(prepare_model(name, model))
        self.instance, self.mount_ops = mount(
            self.system, TEMPLATES[name](self.system.model_root))


class Bridge:
    """The request-independent part of the server, separated so tests can
    drive it without sockets."""

    def __init__(self, static_root=None):
        self.static_root = (pathlib.Path(static_root).resolve()
                            if static_root else None)
        self.sessions = {}

    def create_session(self, body):
        name = body.get("template", "todomvc")
        if name not in TEMPLATES:
            return 400, {"error": {"kind": "unknown-template",
                                   "message": name}}
        model = body.get("model", DEFAULT_MODELS[name])
        session = Session(name, model)
        token = secrets.token_hex(8)
        self.sessions[token] = session
        return 200, {"session": token, "ops": session.mount_ops}

    def dispatch(self, body):
        session = self.sessions.get(body.get("session"))
        if session is None:
            return 404, {"error": {"kind": "unknown-session",
                                   "message": "create one via /api/session"}}
        payload = EventPayload(event_type=body["event_type"],
                               key=body.get("key"),
                               target_value=body.get("target_value"),
                               checked=body.get("checked"))
        try:
            ops = session.instance.dispatch_event(
                int(body["node_id"]), body["event_type"], payload)
        except UpdateError as err:
            return 409, {"error": {"kind": err.kind, "message": str(err)}}
        return 200, {"ops": ops}

    def snapshot(self, token):
        session = self.sessions.get(token)
        if session is None:
            return 404, {"error": {"kind": "unknown-session",
                                   "message": token or "(missing)"}}
        return 200, {"snapshot": session.instance.snapshot()}

    def static_file(self, path):
        """Resolve a URL path inside the static root; / serves the page."""
        if self.static_root is None:
            return None
        if path in ("/", "/index.html"):
            candidate = self.static_root / "public" / "index.html"
        elif path.startswith("/dist/"):
            candidate = self.static_root / path.lstrip("/")
        else:
            candidate = self.static_root / "public" / path.lstrip("/")
        candidate = candidate.resolve()
        if not str(candidate).startswith(str(self.static_root)):
            return None
        if not candidate.is_file():
            return None
        return candidate


class _Handler(BaseHTTPRequestHandler):
    bridge = None

    def _reply(self, status, payload):
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self):
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b"{}"
        return json.loads(raw)

    def do_POST(self):
        try:
            body = self._read_body()
        except (ValueError, json.JSONDecodeError):
            self._reply(400, {"error": {"kind": "bad-json",
                                        "message": "body must be JSON"}})
            return
        if self.path == "/api/session":
            self._reply(*self.bridge.create_session(body))
        elif self.path == "/api/event":
            self._reply(*self.bridge.dispatch(body))
        else:
            self._reply(404, {"error": {"kind": "not-found",
                                        "message": self.path}})

    def do_GET(self):
        path, _, query = self.path.partition("?")
        if path == "/api/snapshot":
            token = None
            for part in query.split("&"):
                if part.startswith("session="):
                    token = part[len("session="):]
            self._reply(*self.bridge.snapshot(token))
            return
        candidate = self.bridge.static_file(path)
        if candidate is None:
            self._reply(404, {"error": {"kind": "not-found",
                                        "message": path}})
            return
        body = candidate.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", CONTENT_TYPES.get(
            candidate.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):  # pragma: no cover - quiet by default
        pass


def make_server(host, port, static_root=None):
    handler = type("BoundHandler", (_Handler,),
                   {"bridge": Bridge(static_root)})
    return HTTPServer((host, port), handler)


def serve(host="127.0.0.1", port=8000, static_root="frontend"):
    server = make_server(host, port, static_root)
    print("serving on http://%s:%d/ (static root: %s)"
          % (host, server.server_address[1], static_root))
    try:
        server.serve_forever()
    except KeyboardInterrupt:  # pragma: no cover - interactive only
        pass
    finally:
        server.server_close()
    return 0
