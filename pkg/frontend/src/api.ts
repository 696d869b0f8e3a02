/** Thin typed wrapper over the sync server's HTTP+JSON API. */

import type { Ack, AllocationPayload, AnswerRecord, Catalog } from "./types.js";

/** The request never reached the server (offline, DNS, refused). */
export class OfflineError extends Error {
  constructor(cause: unknown) {
    super(`network unavailable: ${String(cause)}`);
  }
}

/** The server answered with a non-2xx status. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private bearerToken: string,
    private fetchFn: FetchLike = (...args) => globalThis.fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers: {
          Authorization: `Bearer ${this.bearerToken}`,
          ...(body !== undefined ? { "Content-Type": "application/json" } : {}),
        },
        body: body !== undefined ? JSON.stringify(body) : undefined,
      });
    } catch (err) {
      throw new OfflineError(err);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return (await response.json()) as T;
  }

  getCatalog(): Promise<Catalog> {
    return this.request<Catalog>("GET", "/api/catalog");
  }

  getAllocation(lectureId: string): Promise<AllocationPayload> {
    return this.request<AllocationPayload>("POST", `/api/lecture/${lectureId}/allocation`);
  }

  postAnswers(studentId: string, lectureId: string, records: AnswerRecord[]): Promise<Ack> {
    return this.request<Ack>("POST", "/api/answers", { studentId, lectureId, records });
  }
}
