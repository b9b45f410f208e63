/** Thin fetch client. At most one evaluate request is in flight: composing a
 * newer selection aborts the previous round-trip. */

import type { EvaluationDoc, PlanDoc, RunbookDoc, WorkspaceDoc } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseOrThrow(response: Response): Promise<any> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, body.code ?? "error", body.message ?? response.statusText);
  }
  return body;
}

export class ApiClient {
  private evaluateAbort: AbortController | null = null;

  constructor(private baseUrl: string = "") {}

  async listWorkspaces(): Promise<{ id: string; created_at: string; modified_at: string }[]> {
    const body = await parseOrThrow(await fetch(`${this.baseUrl}/workspaces`));
    return body.workspaces;
  }

  async getWorkspace(id: string): Promise<WorkspaceDoc> {
    return parseOrThrow(await fetch(`${this.baseUrl}/workspaces/${id}`));
  }

  async createWorkspace(payload: unknown): Promise<WorkspaceDoc> {
    return parseOrThrow(
      await fetch(`${this.baseUrl}/workspaces`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );
  }

  /** Aborts any evaluate already in flight; returns null when superseded. */
  async evaluate(
    workspaceId: string,
    scenario: { moved_controllers: string[]; target_switch_ids: string[]; rehoming_month: number },
  ): Promise<EvaluationDoc | null> {
    this.evaluateAbort?.abort();
    const abort = new AbortController();
    this.evaluateAbort = abort;
    try {
      const response = await fetch(`${this.baseUrl}/workspaces/${workspaceId}/evaluate`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(scenario),
        signal: abort.signal,
      });
      return await parseOrThrow(response);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return null;
      throw err;
    } finally {
      if (this.evaluateAbort === abort) this.evaluateAbort = null;
    }
  }

  async plan(workspaceId: string, options: Record<string, unknown> = {}): Promise<PlanDoc> {
    return parseOrThrow(
      await fetch(`${this.baseUrl}/workspaces/${workspaceId}/plan`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(options),
      }),
    );
  }

  async runbook(workspaceId: string, planId: string): Promise<RunbookDoc> {
    return parseOrThrow(await fetch(`${this.baseUrl}/workspaces/${workspaceId}/runbooks/${planId}`));
  }

  async runbookText(workspaceId: string, planId: string): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/workspaces/${workspaceId}/runbooks/${planId}?format=text`,
    );
    if (!response.ok) throw new ApiError(response.status, "error", response.statusText);
    return response.text();
  }
}
