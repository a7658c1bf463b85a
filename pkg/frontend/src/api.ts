/** Typed client for the /api endpoints.
 *
 * Concurrent requests for the same path share one in-flight fetch, so
 * hovering a node repeatedly never stacks identical detail requests.
 */

import type {
  ApiErrorBody,
  ArtifactMeta,
  GraphDocument,
  NodeSummary,
  TalkDetail,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  private inflight = new Map<string, Promise<unknown>>();

  constructor(private readonly base: string = "") {}

  private get<T>(path: string): Promise<T> {
    const pending = this.inflight.get(path);
    if (pending) return pending as Promise<T>;

    const request = fetch(this.base + path)
      .then(async (response) => {
        if (!response.ok) {
          let code = "http_error";
          let message = `${response.status} on ${path}`;
          try {
            const body = (await response.json()) as ApiErrorBody;
            code = body.error.code;
            message = body.error.message;
          } catch {
            // non-JSON error body; keep the fallback message
          }
          throw new ApiError(response.status, code, message);
        }
        return (await response.json()) as T;
      })
      .finally(() => this.inflight.delete(path));

    this.inflight.set(path, request);
    return request;
  }

  meta(): Promise<ArtifactMeta> {
    return this.get("/api/meta");
  }

  talks(): Promise<NodeSummary[]> {
    return this.get("/api/talks");
  }

  talkDetail(id: number, n = 10): Promise<TalkDetail> {
    return this.get(`/api/talks/${id}?n=${n}`);
  }

  neighbors(id: number, n = 10): Promise<GraphDocument> {
    return this.get(`/api/talks/${id}/neighbors?n=${n}`);
  }

  graph(): Promise<GraphDocument> {
    return this.get("/api/graph");
  }

  search(query: string): Promise<NodeSummary[]> {
    return this.get(`/api/search?q=${encodeURIComponent(query)}`);
  }
}
