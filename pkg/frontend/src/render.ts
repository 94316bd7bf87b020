/** SVG renderer for the annotated Hasse diagram, with a list-view fallback. */

import { layoutLattice } from "./layout.js";
import type { NodeVM, ViewModel } from "./model.js";

const SVG = "http://www.w3.org/2000/svg";

function clusterHue(clusterId: number | null): number {
  if (clusterId === null) return 0;
  return (clusterId * 67) % 360;
}

function nodeFill(node: NodeVM): string {
  if (node.clusterId === null) return "#f4f4f6";
  return `hsl(${clusterHue(node.clusterId)} 65% 88%)`;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

export function renderLattice(
  container: HTMLElement,
  vm: ViewModel,
  onSelect: (concept: number) => void,
): void {
  container.replaceChildren();
  if (vm.nodes.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "The lattice is empty: nothing to explore.";
    container.append(empty);
    return;
  }
  try {
    container.append(drawDiagram(vm, onSelect));
  } catch (err) {
    container.append(drawListView(vm, onSelect, err));
  }
}

function drawDiagram(vm: ViewModel, onSelect: (concept: number) => void): SVGSVGElement {
  const layout = layoutLattice(vm.nodes.length, vm.edges);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    class: "lattice",
    role: "img",
  });
  const pos = new Map(layout.nodes.map((n) => [n.id, n]));

  for (const [child, parent] of vm.edges) {
    const a = pos.get(parent)!;
    const b = pos.get(child)!;
    svg.append(
      svgEl("line", {
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        class: "cover-edge",
      }),
    );
  }

  for (const node of vm.nodes) {
    const p = pos.get(node.id)!;
    const group = svgEl("g", {
      class: `concept state-${node.state}` +
        (node.isFailureConcept ? " failure" : "") +
        (node.isHead ? " head" : ""),
      transform: `translate(${p.x} ${p.y})`,
    });
    group.addEventListener("click", () => onSelect(node.id));

    const circle = svgEl("circle", { r: "17", fill: nodeFill(node) });
    group.append(circle);
    if (node.isFailureConcept) {
      group.append(svgEl("circle", { r: "22", class: "failure-ring", fill: "none" }));
    }
    const idText = svgEl("text", { y: "4", class: "concept-id", "text-anchor": "middle" });
    idText.textContent = `c${node.id}`;
    group.append(idText);

    if (node.labelItems.length > 0) {
      const label = svgEl("text", { y: "-26", class: "attr-label", "text-anchor": "middle" });
      label.textContent = node.labelItems.join(" ");
      group.append(label);
    }
    if (node.support !== null) {
      const badge = svgEl("text", { y: "34", class: "stat-label", "text-anchor": "middle" });
      badge.textContent = node.isHead
        ? `sup ${node.support} · lift ${node.lift}`
        : `sup ${node.support}`;
      group.append(badge);
    }
    svg.append(group);
  }
  return svg;
}

function drawListView(
  vm: ViewModel,
  onSelect: (concept: number) => void,
  err: unknown,
): HTMLElement {
  const wrap = document.createElement("div");
  const note = document.createElement("p");
  note.className = "empty-state";
  note.textContent = `Diagram layout unavailable (${String(err)}); showing the concept list.`;
  wrap.append(note);
  const list = document.createElement("ul");
  list.className = "concept-list";
  for (const node of vm.nodes) {
    const entry = document.createElement("li");
    entry.className = `state-${node.state}` + (node.isFailureConcept ? " failure" : "");
    const parts = [`c${node.id}`];
    if (node.labelItems.length) parts.push(`[${node.labelItems.join(", ")}]`);
    if (node.support !== null) parts.push(`sup ${node.support}, lift ${node.lift}`);
    entry.textContent = parts.join(" ");
    entry.addEventListener("click", () => onSelect(node.id));
    list.append(entry);
  }
  wrap.append(list);
  return wrap;
}
