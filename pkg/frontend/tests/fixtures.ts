import type { ApiClient } from "../src/api.js";
import type { CommitDocument, JobSnapshot, ReportDocument } from "../src/types.js";

export const COMMIT_DOC: CommitDocument = {
  number_of_sentences: 2,
  decision_density: 0.5,
  rationale_density: 0.5,
  threshold: 0.5,
  verdict: "success",
  sentences: [
    { index: 0, text: "Fix leak.", decision: true, rationale: false },
    { index: 1, text: "Otherwise boot fails.", decision: false, rationale: true },
  ],
};

export const REPORT: ReportDocument = {
  schema_version: 1,
  metadata: {
    module_url: "http://127.0.0.1:9999/repos/acme/widget/commits",
    fetched_at: "2024-05-01T08:30:00Z",
    classifier: "lexicon",
    n_commits: 146,
    n_sentences: 833,
  },
  distribution: {
    decision_only: 233,
    rationale_only: 162,
    both: 252,
    neither: 186,
    total: 833,
  },
  presence: {
    n_commits: 146,
    n_commits_with_rationale: 124,
    rationale_percentage: 84.93150684931507,
    average_rationale_density: 0.5821,
  },
  factors: {
    size_series: [
      { commit_sha: "a".repeat(40), size: 4, rationale_density: 0.5 },
      { commit_sha: "b".repeat(40), size: 7, rationale_density: 0.0 },
      { commit_sha: "c".repeat(40), size: 2, rationale_density: 1.0 },
    ],
    author_series: [
      { author_id: "dev@example.com", n_commits: 90, avg_rationale_density: 0.61 },
      { author_id: "qa@example.com", n_commits: 56, avg_rationale_density: 0.44 },
    ],
  },
  evolution: [
    { year: 2019, avg_rationale_density: 0.25, avg_decision_density: 0.75, n_commits: 40 },
    { year: 2020, avg_rationale_density: 0.4, avg_decision_density: 0.6, n_commits: 106 },
  ],
  structure: {
    n_bins: 10,
    decision: [40, 52, 48, 50, 47, 51, 49, 50, 48, 50],
    rationale: [30, 35, 40, 41, 44, 42, 45, 43, 47, 47],
    none: [20, 18, 19, 17, 18, 19, 18, 19, 19, 19],
  },
  word_frequencies: {
    decision: [
      ["fix", 120],
      ["remove", 44],
    ],
    rationale: [
      ["because", 90],
      ["otherwise", 31],
    ],
  },
};

export const REPORT_BYTES = new TextEncoder().encode(JSON.stringify(REPORT, null, 2) + "\n");

export const CSV_BYTES = new TextEncoder().encode(
  "commit_sha,commit_date,author_id,sentence_index,sentence_count,sentence_text,decision,rationale\r\n" +
    `${"a".repeat(40)},2020-06-15T10:00:00Z,dev@example.com,0,1,Fix leak.,true,false\r\n`,
);

export interface StubApiOptions {
  snapshots: JobSnapshot[];
  jobId?: string;
  commitDoc?: CommitDocument;
  reportBytes?: Uint8Array;
  csvBytes?: Uint8Array;
  onGetJob?: () => void;
}

export interface StubApi extends ApiClient {
  submissions: Array<{ moduleUrl: string; token: string | null }>;
  commitRequests: Array<{ message: string; threshold: number }>;
}

/** Scripted ApiClient: replays job snapshots in order, holds the last. */
export function makeStubApi(options: StubApiOptions): StubApi {
  const snapshots = [...options.snapshots];
  const jobId = options.jobId ?? "job-1";
  const submissions: StubApi["submissions"] = [];
  const commitRequests: StubApi["commitRequests"] = [];
  return {
    submissions,
    commitRequests,
    async analyzeCommit(message, threshold) {
      commitRequests.push({ message, threshold });
      if (!options.commitDoc) throw new Error("no commit document scripted");
      return options.commitDoc;
    },
    async submitModuleAnalysis(moduleUrl, token) {
      submissions.push({ moduleUrl, token });
      return jobId;
    },
    async getJob(id) {
      if (id !== jobId) throw new Error(`unknown job ${id}`);
      options.onGetJob?.();
      const snapshot = snapshots.length > 1 ? snapshots.shift() : snapshots[0];
      if (!snapshot) throw new Error("no snapshots scripted");
      return snapshot;
    },
    async fetchReportBytes() {
      if (!options.reportBytes) throw new Error("no report scripted");
      return options.reportBytes;
    },
    async fetchDatasetBytes() {
      if (!options.csvBytes) throw new Error("no dataset scripted");
      return options.csvBytes;
    },
  };
}

export function snapshot(state: JobSnapshot["state"], extra: Partial<JobSnapshot> = {}): JobSnapshot {
  return {
    job_id: "job-1",
    module_url: "http://127.0.0.1:9999/repos/acme/widget/commits",
    state,
    created_at: "2024-05-01T08:30:00Z",
    progress: {
      fetched_commits: 0,
      total_commits: null,
      classified_sentences: 0,
      total_sentences: null,
    },
    error: null,
    ...extra,
  };
}
