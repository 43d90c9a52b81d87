import { ApiError, parseReport, type ApiClient } from "./api.js";
import {
  authorBars,
  distributionTable,
  evolutionLines,
  presencePanel,
  sizeScatter,
  structureBars,
  wordFrequencyTables,
} from "./charts.js";
import { clear, el } from "./dom.js";
import { pollUntilTerminal } from "./poll.js";
import type { JobSnapshot, ReportDocument } from "./types.js";

export interface ModulePageOptions {
  api: ApiClient;
  /** Download sink; the default creates a blob link and clicks it. */
  saveFile?: (name: string, bytes: Uint8Array, mime: string) => void;
  pollSleep?: (ms: number) => Promise<void>;
}

function browserSaveFile(name: string, bytes: Uint8Array, mime: string): void {
  const url = URL.createObjectURL(new Blob([bytes.slice().buffer], { type: mime }));
  const anchor = el("a", { href: url, download: name });
  document.body.append(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}

function progressText(snapshot: JobSnapshot): string {
  const { fetched_commits, total_commits, classified_sentences, total_sentences } =
    snapshot.progress;
  const commits =
    total_commits === null ? String(fetched_commits) : `${fetched_commits}/${total_commits}`;
  const sentences =
    total_sentences === null
      ? String(classified_sentences)
      : `${classified_sentences}/${total_sentences}`;
  return `fetched ${commits} commits, classified ${sentences} sentences`;
}

function section(name: string, title: string, ...content: Element[]): HTMLElement {
  return el("section", { class: "report-section", "data-section": name }, [
    el("h2", {}, [title]),
    ...content,
  ]);
}

function renderReport(target: HTMLElement, report: ReportDocument): void {
  clear(target);
  target.append(
    section("distribution", "Distribution", distributionTable(report.distribution)),
    section("word-frequencies", "Word Frequencies", wordFrequencyTables(report)),
    section("presence", "Rationale Presence", presencePanel(report.presence)),
    section(
      "factors",
      "Rationale Factors",
      sizeScatter(report.factors.size_series),
      authorBars(report.factors.author_series),
    ),
    section("structure", "Commit Message Structure", structureBars(report.structure)),
    section("evolution", "Rationale Evolution", evolutionLines(report.evolution)),
  );
}

export function mountModulePage(root: HTMLElement, options: ModulePageOptions): void {
  const api = options.api;
  const saveFile = options.saveFile ?? browserSaveFile;

  const urlInput = el("input", {
    id: "module-url",
    type: "text",
    placeholder: "https://api.github.com/repos/owner/repo/commits?path=...",
    autocomplete: "off",
  });
  // masked and transient: read on submit, cleared immediately, body-only
  const tokenInput = el("input", {
    id: "module-token",
    type: "password",
    placeholder: "API token (optional)",
    autocomplete: "off",
  });
  const start = el("button", { id: "module-start", type: "button" }, [
    "Start Module Analysis",
  ]);
  const stateLine = el("p", { id: "job-state", hidden: "" });
  const progressLine = el("p", { id: "job-progress", hidden: "" });
  const errorPanel = el("div", { id: "job-error", class: "error-panel", hidden: "" });
  const downloadReport = el(
    "button",
    { id: "download-report", type: "button", disabled: "" },
    ["Download report"],
  );
  const downloadCsv = el(
    "button",
    { id: "download-csv", type: "button", disabled: "" },
    ["Download dataset.csv"],
  );
  const sections = el("div", { id: "report-root" });

  root.dataset.state = "idle";
  root.append(
    el("h1", {}, ["Module Analyzer"]),
    el("label", { for: "module-url" }, ["Module commits URL"]),
    urlInput,
    el("label", { for: "module-token" }, ["Token"]),
    tokenInput,
    start,
    stateLine,
    progressLine,
    errorPanel,
    el("div", { class: "downloads" }, [downloadReport, downloadCsv]),
    sections,
  );

  let reportBytes: Uint8Array | null = null;
  let jobId: string | null = null;

  function showFailure(message: string): void {
    errorPanel.textContent = message;
    errorPanel.hidden = false;
    root.dataset.state = "failed";
  }

  function onSnapshot(snapshot: JobSnapshot): void {
    stateLine.textContent = `Job ${snapshot.job_id}: ${snapshot.state}`;
    stateLine.hidden = false;
    progressLine.textContent = progressText(snapshot);
    progressLine.hidden = false;
  }

  start.addEventListener("click", () => {
    const moduleUrl = urlInput.value.trim();
    if (!moduleUrl) {
      showFailure("enter a module commits URL first");
      return;
    }
    const token = tokenInput.value || null;
    tokenInput.value = "";

    root.dataset.state = "running";
    start.disabled = true;
    errorPanel.hidden = true;
    downloadReport.disabled = true;
    downloadCsv.disabled = true;
    reportBytes = null;
    clear(sections);

    void (async () => {
      try {
        jobId = await api.submitModuleAnalysis(moduleUrl, token);
        root.dataset.jobId = jobId;
        const final = await pollUntilTerminal(jobId, {
          getJob: (id) => api.getJob(id),
          onUpdate: onSnapshot,
          sleep: options.pollSleep,
        });
        if (final.state === "failed") {
          showFailure(final.error ?? "module analysis failed");
          return;
        }
        reportBytes = await api.fetchReportBytes(jobId);
        renderReport(sections, parseReport(reportBytes));
        downloadReport.disabled = false;
        downloadCsv.disabled = false;
        root.dataset.state = "done";
      } catch (error: unknown) {
        showFailure(error instanceof ApiError ? error.message : "module analysis failed");
      } finally {
        start.disabled = false;
      }
    })();
  });

  downloadReport.addEventListener("click", () => {
    if (reportBytes !== null) saveFile("report.json", reportBytes, "application/json");
  });

  downloadCsv.addEventListener("click", () => {
    if (jobId === null) return;
    void api
      .fetchDatasetBytes(jobId)
      .then((bytes) => saveFile("dataset.csv", bytes, "text/csv"))
      .catch(() => showFailure("dataset download failed"));
  });
}
