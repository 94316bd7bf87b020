/** Thin fetch client for the latloc session API. */

import type { Decision, LatticePayload, SessionPayload } from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = (await response.json()) as T & { error?: string };
  if (!response.ok) {
    throw new ApiError(body.error ?? response.statusText, response.status);
  }
  return body;
}

export class Client {
  constructor(private readonly base: string = "") {}

  getLattice(): Promise<LatticePayload> {
    return fetch(`${this.base}/api/lattice`).then((r) => asJson<LatticePayload>(r));
  }

  getSession(): Promise<SessionPayload> {
    return fetch(`${this.base}/api/session`).then((r) => asJson<SessionPayload>(r));
  }

  postDecision(decision: Decision): Promise<SessionPayload> {
    return fetch(`${this.base}/api/session/decision`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(decision),
    }).then((r) => asJson<SessionPayload>(r));
  }

  reset(strategy: "queue" | "stack"): Promise<SessionPayload> {
    return fetch(`${this.base}/api/session/reset`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ strategy }),
    }).then((r) => asJson<SessionPayload>(r));
  }
}
