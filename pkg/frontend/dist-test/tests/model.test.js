import assert from "node:assert/strict";
import { test } from "node:test";
import { buildViewModel } from "../src/model.js";
function lattice() {
    return {
        format: 1,
        objects: ["r1", "r2"],
        items: [
            { id: 84, kind: "line", display: "84" },
            { id: 90, kind: "line", display: "90" },
        ],
        concepts: [
            {
                extent: [0, 1],
                intent: [84],
                attr_labels: [84],
                obj_labels: [0],
                support: 12,
                lift: "3/2",
                is_failure_concept: false,
                cluster_id: 0,
                is_head: true,
            },
            {
                extent: [1],
                intent: [84, 90],
                attr_labels: [90],
                obj_labels: [1],
                support: 5,
                lift: "2",
                is_failure_concept: true,
                cluster_id: 1,
                is_head: true,
            },
        ],
        edges: [[1, 0]],
        top: 0,
        bottom: 1,
        failure_concepts: [1],
    };
}
function session() {
    return {
        format: 1,
        frontier: [],
        failures_to_explain: [1],
        explained: [],
        fault_context: [90],
        log: [{ event: "present", concept: 1, label: [90], fault_context: [90] }],
        pending: 1,
        strategy: "queue",
        done: false,
        current: { concept: 1, label: [90] },
    };
}
test("states project from the snapshot verbatim", () => {
    const vm = buildViewModel(lattice(), session());
    assert.equal(vm.nodes[1].state, "current");
    assert.equal(vm.nodes[0].state, "plain");
    assert.equal(vm.inspectedCount, 1);
    assert.deepEqual(vm.faultContext, ["90"]);
    assert.equal(vm.allExplained, false);
    assert.equal(vm.current?.concept, 1);
    assert.deepEqual(vm.current?.label, ["90"]);
});
test("support and lift pass through untouched", () => {
    const vm = buildViewModel(lattice(), session());
    assert.equal(vm.nodes[0].support, 12);
    assert.equal(vm.nodes[0].lift, "3/2");
    assert.equal(vm.nodes[1].isFailureConcept, true);
    assert.equal(vm.nodes[0].isHead, true);
});
test("explained and frontier states, all-explained banner", () => {
    const snap = session();
    snap.frontier = [0];
    snap.explained = [1];
    snap.failures_to_explain = [];
    snap.current = null;
    snap.pending = null;
    snap.done = true;
    const vm = buildViewModel(lattice(), snap);
    assert.equal(vm.nodes[0].state, "frontier");
    assert.equal(vm.nodes[1].state, "explained");
    assert.equal(vm.allExplained, true);
    assert.equal(vm.current, null);
});
test("log lines are human readable", () => {
    const vm = buildViewModel(lattice(), session());
    assert.match(vm.log[0], /presented c1 \[90\]/);
});
test("projection does not mutate its inputs", () => {
    const lat = lattice();
    const snap = session();
    const latCopy = JSON.parse(JSON.stringify(lat));
    const snapCopy = JSON.parse(JSON.stringify(snap));
    buildViewModel(lat, snap);
    assert.deepEqual(lat, latCopy);
    assert.deepEqual(snap, snapCopy);
});
