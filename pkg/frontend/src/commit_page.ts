import { ApiError, type ApiClient } from "./api.js";
import { clear, densityText, el } from "./dom.js";
import type { CommitDocument } from "./types.js";

function bannerText(doc: CommitDocument): string {
  if (doc.verdict === "empty") return "No sentences found in the message.";
  const density = densityText(doc.rationale_density);
  const threshold = doc.threshold.toFixed(2);
  return doc.verdict === "success"
    ? `Success: rationale density ${density} meets the threshold ${threshold}.`
    : `Warning: rationale density ${density} is below the threshold ${threshold}.`;
}

function sentenceRow(entry: CommitDocument["sentences"][number]): HTMLElement {
  const badges: HTMLElement[] = [];
  if (entry.decision) badges.push(el("span", { class: "badge badge-decision" }, ["Decision"]));
  if (entry.rationale) badges.push(el("span", { class: "badge badge-rationale" }, ["Rationale"]));
  if (badges.length === 0) badges.push(el("span", { class: "badge badge-none" }, ["-"]));
  return el("li", { class: "sentence", "data-index": String(entry.index) }, [
    el("span", { class: "sentence-text" }, [entry.text]),
    el("span", { class: "badges" }, badges),
  ]);
}

function renderResult(result: HTMLElement, doc: CommitDocument): void {
  clear(result);
  result.append(
    el("div", { class: `banner banner-${doc.verdict}`, "data-testid": "verdict-banner" }, [
      bannerText(doc),
    ]),
    el("dl", { class: "densities" }, [
      el("dt", {}, ["Number of sentences"]),
      el("dd", { "data-metric": "sentences" }, [String(doc.number_of_sentences)]),
      el("dt", {}, ["Decision density"]),
      el("dd", { "data-metric": "decision-density" }, [densityText(doc.decision_density)]),
      el("dt", {}, ["Rationale density"]),
      el("dd", { "data-metric": "rationale-density" }, [densityText(doc.rationale_density)]),
    ]),
    el("ol", { class: "sentences", start: "1" }, doc.sentences.map(sentenceRow)),
  );
}

export function mountCommitPage(root: HTMLElement, api: ApiClient): void {
  const message = el("textarea", {
    id: "commit-message",
    rows: "8",
    placeholder: "Paste a commit message",
  });
  const threshold = el("input", {
    id: "commit-threshold",
    type: "number",
    min: "0",
    max: "1",
    step: "0.05",
    value: "0.5",
  });
  const start = el("button", { id: "commit-start", type: "button", disabled: "" }, [
    "Start Commit Analysis",
  ]);
  const hint = el("p", { class: "hint", id: "commit-hint" }, [
    "Enter a commit message to analyze.",
  ]);
  const errorBox = el("div", { id: "commit-error", class: "error-toast", hidden: "" });
  const result = el("div", { id: "commit-result" });

  root.dataset.state = "idle";
  root.append(
    el("h1", {}, ["Commit Message Analyzer"]),
    message,
    el("label", { for: "commit-threshold" }, ["Threshold"]),
    threshold,
    start,
    hint,
    errorBox,
    result,
  );

  // analysis is explicit: editing only re-enables the button
  message.addEventListener("input", () => {
    const empty = message.value.trim() === "";
    start.disabled = empty;
    hint.hidden = !empty;
  });

  start.addEventListener("click", () => {
    root.dataset.state = "busy";
    start.disabled = true;
    errorBox.hidden = true;
    void api
      .analyzeCommit(message.value, Number(threshold.value))
      .then((doc) => {
        renderResult(result, doc);
        root.dataset.state = "done";
      })
      .catch((error: unknown) => {
        clear(result);
        errorBox.textContent =
          error instanceof ApiError ? error.message : "analysis request failed";
        errorBox.hidden = false;
        root.dataset.state = "error";
      })
      .finally(() => {
        start.disabled = message.value.trim() === "";
      });
  });
}
