/**
 * Thin client for the session service. `fetch` is injectable so component
 * tests can stub the wire.
 */
import {
  archiveSchema,
  createResponseSchema,
  snapshotSchema,
  type Archive,
  type InteractionRequest,
  type Snapshot,
} from "./schema.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface GenerateSpec {
  attributes: number;
  methods: number;
  uses: number;
  classCount: number;
}

export interface CreateSessionOptions {
  problem?: unknown;
  generate?: GenerateSpec;
  seed: number;
  maxIterations?: number | null;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function fail(response: Response): Promise<never> {
  let detail = `${response.status}`;
  try {
    const body = (await response.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class SessionClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async json<T>(url: string, init: RequestInit | undefined, parse: (raw: unknown) => T): Promise<T> {
    const response = await this.fetchImpl(this.base + url, init);
    if (!response.ok) await fail(response);
    return parse(await response.json());
  }

  createSession(options: CreateSessionOptions) {
    return this.json("/api/sessions", post(options), (raw) => createResponseSchema.parse(raw));
  }

  snapshot(sessionId: string): Promise<Snapshot> {
    return this.json(`/api/sessions/${sessionId}/snapshot`, undefined, (raw) => snapshotSchema.parse(raw));
  }

  /** Runs the colony to the next interaction point; idempotent while one is pending. */
  advance(sessionId: string): Promise<Snapshot> {
    return this.json(`/api/sessions/${sessionId}/advance`, post(), (raw) => snapshotSchema.parse(raw));
  }

  submit(sessionId: string, request: InteractionRequest): Promise<Snapshot> {
    return this.json(`/api/sessions/${sessionId}/interactions`, post(request), (raw) => snapshotSchema.parse(raw));
  }

  archive(sessionId: string): Promise<Archive> {
    return this.json(`/api/sessions/${sessionId}/archive`, undefined, (raw) => archiveSchema.parse(raw));
  }

  async log(sessionId: string, format: "ndjson" | "csv" = "ndjson"): Promise<string> {
    const response = await this.fetchImpl(`${this.base}/api/sessions/${sessionId}/log?format=${format}`);
    if (!response.ok) await fail(response);
    return response.text();
  }
}

function post(body?: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  };
}
