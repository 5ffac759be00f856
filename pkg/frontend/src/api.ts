/** Thin client for the annotation service HTTP API. */

import type { TaskPayload } from "./state.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(detail);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return `HTTP ${response.status}`;
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  async register(annotatorId: string, language: string): Promise<void> {
    const response = await this.fetchImpl(`${this.baseUrl}/annotators`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ id: annotatorId, language }),
    });
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
  }

  /** Next task for the annotator; null when the queue is exhausted (204). */
  async nextTask(annotatorId: string): Promise<TaskPayload | null> {
    const url = `${this.baseUrl}/tasks/next?annotator=${encodeURIComponent(annotatorId)}`;
    const response = await this.fetchImpl(url);
    if (response.status === 204) return null;
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return (await response.json()) as TaskPayload;
  }

  /**
   * POST pre-serialized submission bytes.  The caller owns serialization so
   * queued offline submissions are re-sent byte-for-byte.
   */
  async submit(taskId: string, bodyBytes: string): Promise<{ record_id: string }> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/tasks/${encodeURIComponent(taskId)}/submission`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: bodyBytes,
      },
    );
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return (await response.json()) as { record_id: string };
  }
}
