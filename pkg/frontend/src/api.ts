/** Typed client for the shape editing service. All traffic is JSON over HTTP. */

import type {
  MeshPayload,
  PointIndex,
  SessionPayload,
  Vec,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

function indexSegment(index: PointIndex): string {
  return Array.isArray(index) ? `${index[0]},${index[1]}` : String(index);
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    const text = await resp.text();
    const payload = text ? JSON.parse(text) : null;
    if (!resp.ok) {
      const code = payload?.error?.code ?? "unknown_error";
      const message = payload?.error?.message ?? `HTTP ${resp.status}`;
      throw new ApiError(code, message, resp.status);
    }
    return payload as T;
  }

  presets(): Promise<{ presets: string[] }> {
    return this.request("GET", "/presets");
  }

  createSession(
    preset: string,
    params: Record<string, unknown> = {},
  ): Promise<SessionPayload> {
    return this.request("POST", "/sessions", { preset, params });
  }

  getSession(id: string): Promise<SessionPayload> {
    return this.request("GET", `/sessions/${id}`);
  }

  movePoint(
    id: string,
    index: PointIndex,
    position: Vec,
  ): Promise<SessionPayload> {
    return this.request(
      "PATCH",
      `/sessions/${id}/points/${indexSegment(index)}`,
      { position },
    );
  }

  refine(id: string, factor = 2): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/refine`, { factor });
  }

  mesh(id: string, samples: number): Promise<MeshPayload> {
    return this.request("GET", `/sessions/${id}/mesh?samples=${samples}`);
  }

  undo(id: string): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/undo`);
  }
}
