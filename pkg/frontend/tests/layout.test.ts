import assert from "node:assert/strict";
import { test } from "node:test";

import { layoutLattice } from "../src/layout.js";

test("parents sit strictly above children", () => {
  // diamond: 0 top; 1,2 middle; 3 bottom (edges are [child, parent])
  const edges: [number, number][] = [
    [1, 0],
    [2, 0],
    [3, 1],
    [3, 2],
  ];
  const layout = layoutLattice(4, edges);
  const byId = new Map(layout.nodes.map((n) => [n.id, n]));
  for (const [child, parent] of edges) {
    assert.ok(byId.get(parent)!.y < byId.get(child)!.y);
    assert.ok(byId.get(parent)!.layer < byId.get(child)!.layer);
  }
});

test("every node is placed exactly once within bounds", () => {
  const edges: [number, number][] = [
    [1, 0],
    [2, 0],
    [3, 1],
    [4, 1],
    [4, 2],
    [5, 3],
    [5, 4],
  ];
  const layout = layoutLattice(6, edges);
  assert.equal(layout.nodes.length, 6);
  assert.equal(new Set(layout.nodes.map((n) => n.id)).size, 6);
  for (const node of layout.nodes) {
    assert.ok(node.x >= 0 && node.x <= layout.width);
    assert.ok(node.y >= 0 && node.y <= layout.height);
  }
});

test("layer is the longest cover chain from the top", () => {
  // chain 0 <- 1 <- 2 plus shortcut 2 -> 0: layer(2) must be 2, not 1
  const edges: [number, number][] = [
    [1, 0],
    [2, 1],
    [2, 0],
  ];
  const layout = layoutLattice(3, edges);
  const byId = new Map(layout.nodes.map((n) => [n.id, n]));
  assert.equal(byId.get(0)!.layer, 0);
  assert.equal(byId.get(1)!.layer, 1);
  assert.equal(byId.get(2)!.layer, 2);
});

test("deterministic output for identical input", () => {
  const edges: [number, number][] = [
    [1, 0],
    [2, 0],
    [3, 2],
    [3, 1],
  ];
  assert.deepEqual(layoutLattice(4, edges), layoutLattice(4, edges));
});

test("empty and degenerate inputs", () => {
  assert.deepEqual(layoutLattice(0, []), { nodes: [], width: 0, height: 0 });
  const single = layoutLattice(1, []);
  assert.equal(single.nodes.length, 1);
  assert.throws(() => layoutLattice(2, [[0, 5]]));
  assert.throws(() => layoutLattice(2, [[1, 1]]));
});

test("cycle detection throws (render falls back to list view)", () => {
  assert.throws(() => layoutLattice(2, [[0, 1], [1, 0]]), /cycle/);
});
