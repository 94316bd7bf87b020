/**
 * Round-trip against the real analysis server: generate the three-fault
 * benchmark context, serve it, then drive the session through the HTTP API
 * the way the UI does — one no-fault, one fault-located, then a scripted
 * walkthrough to the all-explained state.
 */

import assert from "node:assert/strict";
import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { after, before, test } from "node:test";

import type { SessionPayload } from "../src/types.js";

const PY = process.env.LATLOC_PYTHON ?? "python3";
const FAULT_LINES = new Set([84, 79, 74]);
const available =
  spawnSync(PY, ["-c", "import latloc"], { stdio: "ignore" }).status === 0;

let workDir = "";
let server: ChildProcess | null = null;
let base = "";

function cli(args: string[]): void {
  const res = spawnSync(PY, ["-m", "latloc.cli", ...args], { encoding: "utf8" });
  assert.equal(res.status, 0, res.stderr);
}

async function waitForServer(url: string, tries = 50): Promise<void> {
  for (let i = 0; i < tries; i++) {
    try {
      const res = await fetch(url);
      if (res.ok) return;
    } catch {
      await new Promise((r) => setTimeout(r, 100));
    }
  }
  throw new Error(`server at ${url} never came up`);
}

async function getSession(): Promise<SessionPayload> {
  const res = await fetch(`${base}/api/session`);
  assert.ok(res.ok);
  return (await res.json()) as SessionPayload;
}

async function decide(body: unknown): Promise<SessionPayload> {
  const res = await fetch(`${base}/api/session/decision`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const text = await res.text();
  assert.ok(res.ok, text);
  return JSON.parse(text) as SessionPayload;
}

before(async () => {
  if (!available) return;
  workDir = mkdtempSync(join(tmpdir(), "latloc-explorer-"));
  const ctx = join(workDir, "ctx.jsonl");
  const rules = join(workDir, "rules.json");
  const lattice = join(workDir, "lattice.json");
  cli(["corpus", "--program", "trityp", "--mutants", "1,2,6", "--grid", "5",
       "--extra", "10", "--seed", "0", "--out", ctx]);
  cli(["mine", "--in", ctx, "--min-sup", "1", "--min-lift", "1", "--out", rules]);
  cli(["lattice", "--rules", rules, "--context", ctx, "--out", lattice]);

  const port = 8300 + Math.floor(Math.random() * 500);
  base = `http://127.0.0.1:${port}`;
  server = spawn(PY, [
    "-m", "latloc.cli", "explore",
    "--lattice", lattice, "--context", ctx, "--serve", String(port),
  ]);
  await waitForServer(`${base}/api/lattice`);
});

after(() => {
  server?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

test("no-fault grows the frontier, fault-located shrinks failures", { skip: !available }, async () => {
  const start = await getSession();
  assert.ok(start.current, "server presents a concept");
  const failuresBefore = start.failures_to_explain.length;
  assert.ok(failuresBefore > 0);

  // pick a concept with no fault line in its label so the frontier grows
  let snap = start;
  while (snap.current && snap.current.label.some((id) => FAULT_LINES.has(id))) {
    snap = await decide({ concept: snap.current.concept, decision: "no_fault" });
  }
  assert.ok(snap.current);
  const frontierBefore = snap.frontier.length;
  snap = await decide({ concept: snap.current!.concept, decision: "no_fault" });
  assert.ok(
    snap.frontier.length >= frontierBefore,
    "no-fault adds upper neighbours (minus the popped current)",
  );
  assert.equal(snap.failures_to_explain.length, failuresBefore);

  // walk until a fault line shows up, then declare it located
  while (snap.current && !snap.current.label.some((id) => FAULT_LINES.has(id))) {
    snap = await decide({ concept: snap.current.concept, decision: "no_fault" });
  }
  assert.ok(snap.current, "a fault-labelled concept is eventually presented");
  const items = snap.current!.label.filter((id) => FAULT_LINES.has(id));
  const afterLocate = await decide({
    concept: snap.current!.concept,
    decision: "fault_located",
    items,
  });
  assert.ok(
    afterLocate.failures_to_explain.length < failuresBefore,
    "locating a fault explains at least one failure concept",
  );
});

test("scripted walkthrough reaches the all-explained state", { skip: !available }, async () => {
  // fresh session, then answer exactly like the competent-oracle script
  const resetRes = await fetch(`${base}/api/session/reset`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ strategy: "queue" }),
  });
  assert.ok(resetRes.ok);
  let snap = (await resetRes.json()) as SessionPayload;
  let guard = 0;
  while (snap.current && guard++ < 200) {
    const faults = snap.current.label.filter((id) => FAULT_LINES.has(id));
    snap = faults.length
      ? await decide({ concept: snap.current.concept, decision: "fault_located", items: faults })
      : await decide({ concept: snap.current.concept, decision: "no_fault" });
  }
  assert.equal(snap.failures_to_explain.length, 0, "every failure concept explained");
  assert.equal(snap.done, true);
  assert.ok(snap.fault_context.length > 0);
  const history = snap.log.filter((e) => e.event !== "present");
  const sizes = history.map((e) => (e.failures_to_explain ?? []).length);
  const sorted = [...sizes].sort((a, b) => b - a);
  assert.deepEqual(sizes, sorted, "failures_to_explain shrinks monotonically");
});
