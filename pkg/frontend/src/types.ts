// Payload shapes of the analysis service. The UI renders these values
// verbatim; it never recomputes a metric on its own.

export type Verdict = "success" | "warning" | "empty";

export interface SentenceEntry {
  index: number;
  text: string;
  decision: boolean;
  rationale: boolean;
}

export interface CommitDocument {
  number_of_sentences: number;
  decision_density: number | null;
  rationale_density: number | null;
  threshold: number;
  verdict: Verdict;
  sentences: SentenceEntry[];
}

export type JobState =
  | "queued"
  | "fetching"
  | "classifying"
  | "analyzing"
  | "done"
  | "failed";

export interface JobProgress {
  fetched_commits: number;
  total_commits: number | null;
  classified_sentences: number;
  total_sentences: number | null;
}

export interface JobSnapshot {
  job_id: string;
  module_url: string;
  state: JobState;
  created_at: string;
  progress: JobProgress;
  error: string | null;
}

export interface ReportMetadata {
  module_url: string | null;
  fetched_at: string | null;
  classifier: string;
  n_commits: number;
  n_sentences: number;
}

export interface Distribution {
  decision_only: number;
  rationale_only: number;
  both: number;
  neither: number;
  total: number;
}

export interface Presence {
  n_commits: number;
  n_commits_with_rationale: number;
  rationale_percentage: number | null;
  average_rationale_density: number | null;
}

export interface SizePoint {
  commit_sha: string;
  size: number;
  rationale_density: number;
}

export interface AuthorStat {
  author_id: string;
  n_commits: number;
  avg_rationale_density: number | null;
}

export interface YearPoint {
  year: number;
  avg_rationale_density: number;
  avg_decision_density: number;
  n_commits: number;
}

export interface Structure {
  n_bins: number;
  decision: number[];
  rationale: number[];
  none: number[];
}

export type WordRow = [string, number];

export interface ReportDocument {
  schema_version: number;
  metadata: ReportMetadata;
  distribution: Distribution;
  presence: Presence;
  factors: {
    size_series: SizePoint[];
    author_series: AuthorStat[];
  };
  evolution: YearPoint[];
  structure: Structure;
  word_frequencies: {
    decision: WordRow[];
    rationale: WordRow[];
  };
}
