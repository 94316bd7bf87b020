/**
 * Explorer entry point. Every state change round-trips through the server:
 * the page renders the latest snapshot, never an optimistic guess.
 */

import { ApiError, Client } from "./api.js";
import { buildViewModel, type ViewModel } from "./model.js";
import { renderLattice } from "./render.js";
import type { LatticePayload, SessionPayload } from "./types.js";

const client = new Client();

let lattice: LatticePayload;
let session: SessionPayload;
let selected: number | null = null;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function setStatus(text: string, isError = false): void {
  const status = el<HTMLParagraphElement>("status");
  status.textContent = text;
  status.classList.toggle("error", isError);
}

async function refresh(next?: SessionPayload): Promise<void> {
  session = next ?? (await client.getSession());
  render();
}

function render(): void {
  const vm = buildViewModel(lattice, session);
  renderLattice(el("diagram"), vm, (concept) => {
    selected = concept;
    render();
  });
  renderSidebar(vm);
}

function renderSidebar(vm: ViewModel): void {
  el<HTMLSpanElement>("inspected").textContent = String(vm.inspectedCount);
  el<HTMLSpanElement>("to-explain").textContent = String(vm.failuresToExplain.length);
  el<HTMLSpanElement>("frontier-size").textContent = String(vm.frontier.length);
  el<HTMLSpanElement>("strategy").textContent = vm.strategy;

  const banner = el<HTMLDivElement>("banner");
  if (vm.allExplained) {
    banner.textContent = "All failure concepts explained.";
    banner.className = "banner success";
  } else if (vm.done) {
    banner.textContent = "Frontier exhausted; some failures remain unexplained.";
    banner.className = "banner warn";
  } else {
    banner.textContent = "";
    banner.className = "banner";
  }

  const card = el<HTMLDivElement>("current-card");
  card.replaceChildren();
  if (vm.current) {
    const node = vm.nodes[vm.current.concept];
    const title = document.createElement("h3");
    title.textContent = `Concept c${vm.current.concept}`;
    card.append(title);
    if (node && node.support !== null) {
      const stats = document.createElement("p");
      stats.textContent = `support ${node.support}, lift ${node.lift}`;
      card.append(stats);
    }
    const label = document.createElement("p");
    label.textContent = vm.current.label.length
      ? `New items: ${vm.current.label.join(", ")}`
      : "No new items at this concept.";
    card.append(label);

    const itemBoxes: HTMLInputElement[] = [];
    if (vm.current.label.length) {
      const picker = document.createElement("div");
      picker.className = "item-picker";
      for (const item of vm.current.label) {
        const wrap = document.createElement("label");
        const box = document.createElement("input");
        box.type = "checkbox";
        box.value = item;
        box.checked = true;
        itemBoxes.push(box);
        wrap.append(box, document.createTextNode(` ${item}`));
        picker.append(wrap);
      }
      card.append(picker);
    }

    const actions = document.createElement("div");
    actions.className = "actions";
    const noFault = document.createElement("button");
    noFault.textContent = "No fault here";
    noFault.addEventListener("click", () => decide({ kind: "no_fault" }));
    const located = document.createElement("button");
    located.textContent = "Fault located";
    located.className = "primary";
    located.addEventListener("click", () =>
      decide({
        kind: "fault_located",
        items: itemBoxes.filter((b) => b.checked).map((b) => b.value),
      }),
    );
    actions.append(located, noFault);
    card.append(actions);
  } else {
    const idle = document.createElement("p");
    idle.textContent = vm.allExplained
      ? "Exploration finished."
      : "No concept awaiting a decision.";
    card.append(idle);
  }

  const context = el<HTMLParagraphElement>("fault-context");
  context.textContent = vm.faultContext.length
    ? vm.faultContext.join(", ")
    : "(empty)";

  const log = el<HTMLOListElement>("log");
  log.replaceChildren();
  for (const line of vm.log) {
    const entry = document.createElement("li");
    entry.textContent = line;
    log.append(entry);
  }

  const detail = el<HTMLParagraphElement>("selection");
  if (selected !== null && vm.nodes[selected]) {
    const node = vm.nodes[selected]!;
    const bits = [
      `c${node.id}`,
      node.labelItems.length ? `label [${node.labelItems.join(", ")}]` : "no label",
      node.support !== null ? `support ${node.support}, lift ${node.lift}` : "unannotated",
    ];
    if (node.isFailureConcept) bits.push("failure concept");
    if (node.isHead) bits.push("cluster head");
    detail.textContent = bits.join(" · ");
  } else {
    detail.textContent = "Click a concept to inspect it.";
  }
}

async function decide(choice: { kind: "no_fault" } | { kind: "fault_located"; items: string[] }): Promise<void> {
  if (!session.current) return;
  const concept = session.current.concept;
  const names = new Map(lattice.items.map((item) => [item.display, item.id]));
  try {
    const next =
      choice.kind === "no_fault"
        ? await client.postDecision({ decision: "no_fault", concept })
        : await client.postDecision({
            decision: "fault_located",
            concept,
            items: choice.items
              .map((display) => names.get(display))
              .filter((id): id is number => id !== undefined),
          });
    setStatus("");
    await refresh(next);
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      setStatus(`stale snapshot (${err.message}); refetching`, true);
      await refresh();
    } else {
      setStatus(String(err), true);
    }
  }
}

async function resetSession(strategy: "queue" | "stack"): Promise<void> {
  try {
    const next = await client.reset(strategy);
    selected = null;
    setStatus("");
    await refresh(next);
  } catch (err) {
    setStatus(String(err), true);
  }
}

async function boot(): Promise<void> {
  try {
    lattice = await client.getLattice();
    await refresh();
    el<HTMLButtonElement>("reset-queue").addEventListener("click", () => resetSession("queue"));
    el<HTMLButtonElement>("reset-stack").addEventListener("click", () => resetSession("stack"));
  } catch (err) {
    setStatus(`failed to load: ${String(err)}`, true);
  }
}

void boot();
