/** Thin typed client over the service's JSON endpoints.
 *
 * The transport is injectable so tests can replay recorded responses;
 * the client itself holds no recognition or grading logic.
 */

import type {
  Feedback,
  LessonsResponse,
  Mode,
  QuestionPayload,
  RawStroke,
  SessionResponse,
  StrokeResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: {
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ServiceError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = "ServiceError";
  }
}

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response;
    try {
      response = await this.fetchFn(`${this.baseUrl}/v1${path}`, {
        method,
        headers: { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ServiceError(0, `connection failed: ${String(err)}`);
    }
    const payload = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      const detail = typeof payload?.detail === "string"
        ? payload.detail
        : `request failed with status ${response.status}`;
      throw new ServiceError(response.status, detail);
    }
    return payload as T;
  }

  lessons(): Promise<LessonsResponse> {
    return this.request("GET", "/lessons");
  }

  createSession(lessonId: string, mode: Mode): Promise<SessionResponse> {
    return this.request("POST", "/sessions", { lesson_id: lessonId, mode });
  }

  submitStroke(sessionId: string, stroke: RawStroke): Promise<StrokeResponse> {
    return this.request("POST", `/sessions/${sessionId}/strokes`, stroke);
  }

  undo(sessionId: string): Promise<StrokeResponse> {
    return this.request("POST", `/sessions/${sessionId}/undo`);
  }

  clear(sessionId: string): Promise<StrokeResponse> {
    return this.request("POST", `/sessions/${sessionId}/clear`);
  }

  check(sessionId: string): Promise<Feedback> {
    return this.request("POST", `/sessions/${sessionId}/check`);
  }

  navigate(sessionId: string, to: number): Promise<{ question: QuestionPayload }> {
    return this.request("POST", `/sessions/${sessionId}/navigate`, { to });
  }
}
