import type { CommitDocument, JobSnapshot, ReportDocument } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export interface ApiClient {
  analyzeCommit(message: string, threshold: number): Promise<CommitDocument>;
  submitModuleAnalysis(moduleUrl: string, token: string | null): Promise<string>;
  getJob(jobId: string): Promise<JobSnapshot>;
  fetchReportBytes(jobId: string): Promise<Uint8Array>;
  fetchDatasetBytes(jobId: string): Promise<Uint8Array>;
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `request failed with status ${response.status}`;
}

export function createApiClient(baseUrl = "", fetchFn: typeof fetch = fetch): ApiClient {
  async function request(path: string, init?: RequestInit): Promise<Response> {
    const response = await fetchFn(`${baseUrl}${path}`, init);
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return response;
  }

  async function requestJson<T>(path: string, init?: RequestInit): Promise<T> {
    return (await (await request(path, init)).json()) as T;
  }

  return {
    async analyzeCommit(message, threshold) {
      return requestJson<CommitDocument>("/api/commit-analysis", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ message, threshold }),
      });
    },

    async submitModuleAnalysis(moduleUrl, token) {
      // the token rides in the body only: never a query string, never a header
      const payload: { module_url: string; token?: string } = { module_url: moduleUrl };
      if (token) payload.token = token;
      const answer = await requestJson<{ job_id: string }>("/api/module-analysis", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      });
      return answer.job_id;
    },

    async getJob(jobId) {
      return requestJson<JobSnapshot>(`/api/jobs/${encodeURIComponent(jobId)}`);
    },

    async fetchReportBytes(jobId) {
      const response = await request(`/api/jobs/${encodeURIComponent(jobId)}/report`);
      return new Uint8Array(await response.arrayBuffer());
    },

    async fetchDatasetBytes(jobId) {
      const response = await request(`/api/jobs/${encodeURIComponent(jobId)}/dataset.csv`);
      return new Uint8Array(await response.arrayBuffer());
    },
  };
}

export function parseReport(bytes: Uint8Array): ReportDocument {
  return JSON.parse(new TextDecoder().decode(bytes)) as ReportDocument;
}
