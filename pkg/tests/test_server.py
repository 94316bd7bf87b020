"""HTTP JSON API: lattice/session snapshots, decision flow, reset."""

from __future__ import annotations

import json
import threading
import urllib.request

import pytest

from latloc.corpus import SuiteSpec, generate_context
from latloc.failure_lattice import build_failure_lattice
from latloc.rules import mine_failure_rules
from latloc.server import ExplorerState, make_server


@pytest.fixture()
def server():
    suite = generate_context(SuiteSpec("trityp", (1, 2, 6), grid=5, extra=10, seed=0))
    tc = suite.context
    fl = build_failure_lattice(mine_failure_rules(tc, min_sup=1, min_lift=1))
    state = ExplorerState(fl, [ex.coverage for ex in tc.failing])
    httpd = make_server(state, port=0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{httpd.server_address[1]}"
    yield base
    httpd.shutdown()
    httpd.server_close()


def get(base, path):
    with urllib.request.urlopen(base + path) as resp:
        return json.loads(resp.read())


def post(base, path, body, expect_error=False):
    req = urllib.request.Request(
        base + path,
        data=json.dumps(body).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        if not expect_error:
            raise
        return err.code, json.loads(err.read())


def test_lattice_endpoint(server):
    payload = get(server, "/api/lattice")
    assert payload["format"] == 1
    assert payload["failure_concepts"]
    assert len(payload["concepts"]) == len({tuple(c["intent"]) for c in payload["concepts"]})
    for child, parent in payload["edges"]:
        assert 0 <= child < len(payload["concepts"])
        assert 0 <= parent < len(payload["concepts"])


def test_session_flow(server):
    snap = get(server, "/api/session")
    assert snap["format"] == 1
    assert snap["current"] is not None
    assert set(snap["failures_to_explain"]) >= set(snap["frontier"]) or snap["frontier"]
    first = snap["current"]["concept"]

    # no_fault grows the frontier with upper neighbours (or at least moves on)
    status, after = post(server, "/api/session/decision", {"concept": first, "decision": "no_fault"})
    assert status == 200
    assert after["current"]["concept"] != first

    # locating a fault shrinks failures_to_explain
    before_count = len(after["failures_to_explain"])
    concept = after["current"]["concept"]
    status, done = post(
        server,
        "/api/session/decision",
        {"concept": concept, "decision": "fault_located", "items": after["current"]["label"]},
    )
    assert status == 200
    assert len(done["failures_to_explain"]) <= before_count


def test_decision_on_wrong_concept_409(server):
    snap = get(server, "/api/session")
    wrong = snap["current"]["concept"] + 1000
    status, body = post(
        server, "/api/session/decision", {"concept": wrong, "decision": "no_fault"},
        expect_error=True,
    )
    assert status == 409
    assert "error" in body


def test_reset_strategy_changes_pick(server):
    snap_q = post(server, "/api/session/reset", {"strategy": "queue"})[1]
    snap_s = post(server, "/api/session/reset", {"strategy": "stack"})[1]
    assert snap_q["current"]["concept"] != snap_s["current"]["concept"]
    assert snap_s["strategy"] == "stack"


def test_unknown_route_404(server):
    req = urllib.request.Request(server + "/api/nope", data=b"{}", method="POST")
    try:
        urllib.request.urlopen(req)
        assert False, "expected 404"
    except urllib.error.HTTPError as err:
        assert err.code == 404


def test_fallback_index_served(server):
    with urllib.request.urlopen(server + "/") as resp:
        body = resp.read().decode()
    assert "latloc" in body
