import type {
  EdgePatch,
  GraphView,
  PatchResponse,
  RiskReportPayload,
  SessionDescriptor,
} from "./types";

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    message: string,
    public details: string[] = [],
  ) {
    super(message);
  }
}

type FetchFn = typeof fetch;

/** Surface of the risk service the UI depends on. */
export interface RiskServiceApi {
  listSessions(): Promise<{ sessions: SessionDescriptor[] }>;
  loadGraph(spec: unknown): Promise<SessionDescriptor>;
  graphView(session: string): Promise<GraphView>;
  rank(session: string, from: string, to: string, cost?: number): Promise<RiskReportPayload>;
  patchEdges(session: string, patches: EdgePatch[]): Promise<PatchResponse>;
  reset(session: string): Promise<SessionDescriptor>;
}

/** Thin typed client for the risk service. */
export class ApiClient implements RiskServiceApi {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchFn = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const message =
        body && typeof body.error === "string"
          ? body.error
          : `request failed with status ${response.status}`;
      const details = body && Array.isArray(body.details) ? body.details : [];
      throw new ApiRequestError(response.status, message, details);
    }
    return body as T;
  }

  listSessions(): Promise<{ sessions: SessionDescriptor[] }> {
    return this.request("/sessions");
  }

  loadGraph(spec: unknown): Promise<SessionDescriptor> {
    return this.request("/graph", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(spec),
    });
  }

  graphView(session: string): Promise<GraphView> {
    return this.request(`/sessions/${encodeURIComponent(session)}/graph`);
  }

  rank(session: string, from: string, to: string, cost?: number): Promise<RiskReportPayload> {
    const params = new URLSearchParams({ from, to });
    if (cost !== undefined) params.set("cost", String(cost));
    return this.request(
      `/sessions/${encodeURIComponent(session)}/rank?${params.toString()}`,
    );
  }

  patchEdges(session: string, patches: EdgePatch[]): Promise<PatchResponse> {
    return this.request(`/sessions/${encodeURIComponent(session)}/edges`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(patches),
    });
  }

  reset(session: string): Promise<SessionDescriptor> {
    return this.request(`/sessions/${encodeURIComponent(session)}/reset`, {
      method: "POST",
    });
  }
}
