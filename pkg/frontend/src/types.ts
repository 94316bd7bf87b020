/** Wire types for the latloc HTTP JSON API. */

export interface ConceptEntry {
  extent: number[];
  intent: number[];
  attr_labels: number[];
  obj_labels: number[];
  support: number | null;
  lift: string | null;
  is_failure_concept: boolean;
  cluster_id: number | null;
  is_head: boolean;
}

export interface ItemEntry {
  id: number;
  kind: string;
  display: string;
}

export interface LatticePayload {
  format: number;
  objects: string[];
  items: ItemEntry[];
  concepts: ConceptEntry[];
  edges: [number, number][]; // [child, parent]
  top: number;
  bottom: number;
  failure_concepts: number[];
}

export interface LogEntry {
  event: "present" | "no_fault" | "fault_located";
  concept: number;
  label?: number[];
  items?: number[];
  fault_context?: number[];
  to_explore?: number[];
  failures_to_explain?: number[];
}

export interface SessionPayload {
  format: number;
  frontier: number[];
  failures_to_explain: number[];
  explained: number[];
  fault_context: number[];
  log: LogEntry[];
  pending: number | null;
  strategy: "queue" | "stack";
  done: boolean;
  current: { concept: number; label: number[] } | null;
}

export type Decision =
  | { decision: "no_fault"; concept: number }
  | { decision: "fault_located"; concept: number; items: number[] };
