"""Localhost HTTP JSON API hosting one exploration session for the explorer UI.

Reads are concurrent; decision POSTs are serialized through a lock so the
single-writer session contract holds. No auth: this is a local debugging tool.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from latloc import failure_lattice as fl_mod
from latloc.errors import LatlocError, SessionError
from latloc.trace_model import Item, load_trace_context

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>latloc explorer</title></head>
<body><h1>latloc explorer API</h1>
<p>No UI build found. The JSON API is live:</p>
<ul>
<li>GET /api/lattice</li>
<li>GET /api/session</li>
<li>POST /api/session/decision</li>
<li>POST /api/session/reset</li>
</ul></body></html>
"""

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".json": "application/json",
    ".map": "application/json",
}


class ExplorerState:
    """Shared lattice + single session, guarded by a lock."""

    def __init__(self, lattice: fl_mod.FailureLattice, failing_traces, strategy="queue"):
        self.lattice = lattice
        self.failing_traces = [frozenset(tr) for tr in failing_traces]
        self.lock = threading.Lock()
        self.session = fl_mod.start_session(lattice, self.failing_traces, strategy)

    @classmethod
    def from_files(cls, lattice_path, context_path, strategy="queue", kind="line"):
        from latloc.cli import _rules_from_entries

        payload = json.loads(Path(lattice_path).read_text())
        rules = _rules_from_entries(payload["rules"], kind)
        lattice = fl_mod.build_failure_lattice(rules)
        ctx = load_trace_context(context_path, mode="coverage", item_kind=kind)
        return cls(lattice, [ex.coverage for ex in ctx.failing], strategy)

    def reset(self, strategy: str) -> None:
        self.session = fl_mod.start_session(self.lattice, self.failing_traces, strategy)

    def _advance(self) -> None:
        # Present the next frontier concept so the client always sees a
        # current pick while the session is live.
        session = self.session
        if (
            session.pending is None
            and session.frontier
            and session.failures_to_explain
        ):
            fl_mod.next_concept(session, self.lattice)

    def session_payload(self) -> dict:
        self._advance()
        session = self.session
        snap = session.snapshot()
        current = None
        if session.pending is not None:
            current = {
                "concept": session.pending,
                "label": [it.id for it in self.lattice.label_items(session.pending)],
            }
        snap["current"] = current
        snap["format"] = 1
        return snap

    def lattice_payload(self) -> dict:
        payload = {"format": 1}
        payload.update(
            fl_mod.failure_lattice_to_json(self.lattice, self.failing_traces)
        )
        return payload

    def apply(self, body: dict) -> dict:
        session = self.session
        self._advance()
        concept = body.get("concept", session.pending)
        decision = body.get("decision")
        if decision not in ("no_fault", "fault_located"):
            raise SessionError(f"unknown decision {decision!r}")
        items: list[Item] = []
        if decision == "fault_located":
            wanted = set(body.get("items", []))
            label = self.lattice.label_items(concept) if concept is not None else ()
            items = [it for it in label if it.id in wanted] or list(label)
        fl_mod.apply_decision(session, self.lattice, concept, decision, items)
        return self.session_payload()


def make_server(state: ExplorerState, port: int = 8177, static_dir: str | None = None):
    static_root = _resolve_static(static_dir)

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # quiet by default
            pass

        def _send(self, code: int, body: bytes, content_type: str):
            self.send_response(code)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _json(self, payload: dict, code: int = 200):
            self._send(code, json.dumps(payload, sort_keys=True).encode(), "application/json")

        def do_GET(self):
            path = self.path.split("?", 1)[0]
            try:
                if path == "/api/lattice":
                    with state.lock:
                        self._json(state.lattice_payload())
                elif path == "/api/session":
                    with state.lock:
                        self._json(state.session_payload())
                else:
                    self._static(path)
            except LatlocError as exc:
                self._json({"error": str(exc)}, 409)

        def do_POST(self):
            path = self.path.split("?", 1)[0]
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                body = json.loads(raw or b"{}")
            except json.JSONDecodeError:
                self._json({"error": "invalid JSON body"}, 400)
                return
            try:
                if path == "/api/session/decision":
                    with state.lock:
                        self._json(state.apply(body))
                elif path == "/api/session/reset":
                    strategy = body.get("strategy", "queue")
                    with state.lock:
                        state.reset(strategy)
                        self._json(state.session_payload())
                else:
                    self._json({"error": "not found"}, 404)
            except LatlocError as exc:
                self._json({"error": str(exc)}, 409)

        def _static(self, path: str):
            if path in ("", "/"):
                path = "/index.html"
            if static_root is not None:
                target = (static_root / path.lstrip("/")).resolve()
                if static_root in target.parents or target == static_root:
                    if target.is_file():
                        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
                        self._send(200, target.read_bytes(), ctype)
                        return
            if path == "/index.html":
                self._send(200, _FALLBACK_PAGE.encode(), "text/html; charset=utf-8")
            else:
                self._send(404, b"not found", "text/plain")

    return ThreadingHTTPServer(("127.0.0.1", port), Handler)


def _resolve_static(static_dir: str | None) -> Path | None:
    if static_dir:
        root = Path(static_dir).resolve()
        return root if root.is_dir() else None
    # Default: the explorer build sitting next to a source checkout.
    here = Path(__file__).resolve()
    for parent in here.parents:
        candidate = parent / "frontend" / "dist"
        if candidate.is_dir():
            return candidate
    return None
