// Client-side renderings of the report document, one builder per
// dashboard section. Every displayed number is a payload value; the
// math below only places shapes.

import { densityText, el, percentText, svgEl } from "./dom.js";
import type {
  AuthorStat,
  Distribution,
  Presence,
  ReportDocument,
  SizePoint,
  Structure,
  WordRow,
  YearPoint,
} from "./types.js";

const WIDTH = 560;
const HEIGHT = 220;
const PAD = 36;

function chartSvg(): SVGElement {
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    role: "img",
  });
  return svg;
}

function emptyNote(which: string): HTMLElement {
  return el("p", { class: "empty-note" }, [`no ${which} data`]);
}

export function distributionTable(distribution: Distribution): HTMLElement {
  const rows: Array<[string, number]> = [
    ["Decision only sentences", distribution.decision_only],
    ["Rationale only sentences", distribution.rationale_only],
    ["Decision & Rationale sentences", distribution.both],
    ["No Decision and No Rationale sentences", distribution.neither],
    ["Total", distribution.total],
  ];
  return el("table", { class: "stats-table", "data-testid": "distribution-table" }, [
    el(
      "tbody",
      {},
      rows.map(([label, count]) =>
        el("tr", {}, [
          el("th", { scope: "row" }, [label]),
          el("td", { "data-value": String(count) }, [String(count)]),
        ]),
      ),
    ),
  ]);
}

function wordTable(title: string, rows: WordRow[]): HTMLElement {
  if (rows.length === 0) return emptyNote(title.toLowerCase());
  return el("table", { class: "stats-table", "data-testid": `words-${title.toLowerCase()}` }, [
    el("caption", {}, [title]),
    el("thead", {}, [el("tr", {}, [el("th", {}, ["Word"]), el("th", {}, ["Count"])])]),
    el(
      "tbody",
      {},
      rows.map(([word, count]) =>
        el("tr", {}, [el("td", {}, [word]), el("td", { "data-value": String(count) }, [String(count)])]),
      ),
    ),
  ]);
}

export function wordFrequencyTables(report: ReportDocument): HTMLElement {
  return el("div", { class: "word-tables" }, [
    wordTable("Decision", report.word_frequencies.decision),
    wordTable("Rationale", report.word_frequencies.rationale),
  ]);
}

export function presencePanel(presence: Presence): HTMLElement {
  const entries: Array<[string, string]> = [
    ["Total Number of commits", String(presence.n_commits)],
    ["Number of commits that contain rationale", String(presence.n_commits_with_rationale)],
    ["Rationale Percentage", percentText(presence.rationale_percentage)],
    ["Average Rationale Density", densityText(presence.average_rationale_density)],
  ];
  return el(
    "dl",
    { class: "presence-panel", "data-testid": "presence-panel" },
    entries.flatMap(([label, value]) => [
      el("dt", {}, [label]),
      el("dd", { "data-metric": label }, [value]),
    ]),
  );
}

function scaleLinear(domainMax: number, rangeMax: number): (v: number) => number {
  const top = domainMax > 0 ? domainMax : 1;
  return (v) => (v / top) * rangeMax;
}

export function sizeScatter(series: SizePoint[]): Element {
  if (series.length === 0) return emptyNote("commit size");
  const svg = chartSvg();
  const maxSize = Math.max(...series.map((p) => p.size));
  const x = scaleLinear(maxSize, WIDTH - 2 * PAD);
  for (const point of series) {
    const cx = PAD + x(point.size);
    const cy = HEIGHT - PAD - point.rationale_density * (HEIGHT - 2 * PAD);
    const dot = svgEl("circle", {
      cx: cx.toFixed(1),
      cy: cy.toFixed(1),
      r: "3",
      class: "dot",
      "data-size": String(point.size),
      "data-density": String(point.rationale_density),
    });
    dot.append(svgEl("title"));
    (dot.firstChild as SVGElement).textContent =
      `${point.commit_sha.slice(0, 10)}: ${point.size} sentences, density ${point.rationale_density}`;
    svg.append(dot);
  }
  return svg;
}

export function authorBars(series: AuthorStat[]): Element {
  if (series.length === 0) return emptyNote("author");
  const svg = chartSvg();
  const shown = series.slice(0, 25);
  const rowHeight = (HEIGHT - 2 * PAD) / shown.length;
  const x = scaleLinear(1, WIDTH - 2 * PAD - 160);
  shown.forEach((author, i) => {
    const density = author.avg_rationale_density ?? 0;
    const y = PAD + i * rowHeight;
    svg.append(
      svgEl("rect", {
        x: String(PAD + 160),
        y: y.toFixed(1),
        width: Math.max(1, x(density)).toFixed(1),
        height: Math.max(2, rowHeight - 2).toFixed(1),
        class: "bar",
        "data-author": author.author_id,
        "data-density": String(author.avg_rationale_density),
      }),
    );
    const label = svgEl("text", {
      x: String(PAD),
      y: (y + rowHeight / 2).toFixed(1),
      class: "bar-label",
    });
    label.textContent = `${author.author_id} (${author.n_commits})`;
    svg.append(label);
  });
  return svg;
}

export function structureBars(structure: Structure): Element {
  const total = [...structure.decision, ...structure.rationale, ...structure.none];
  if (total.every((count) => count === 0)) return emptyNote("structure");
  const svg = chartSvg();
  const binWidth = (WIDTH - 2 * PAD) / structure.n_bins;
  const tallest = Math.max(
    ...Array.from({ length: structure.n_bins }, (_, i) =>
      (structure.decision[i] ?? 0) + (structure.rationale[i] ?? 0) + (structure.none[i] ?? 0),
    ),
  );
  const y = scaleLinear(tallest, HEIGHT - 2 * PAD);
  for (let i = 0; i < structure.n_bins; i += 1) {
    let stackTop = HEIGHT - PAD;
    const segments: Array<[string, number]> = [
      ["decision", structure.decision[i] ?? 0],
      ["rationale", structure.rationale[i] ?? 0],
      ["none", structure.none[i] ?? 0],
    ];
    for (const [category, count] of segments) {
      if (count === 0) continue;
      const height = y(count);
      stackTop -= height;
      svg.append(
        svgEl("rect", {
          x: (PAD + i * binWidth + 1).toFixed(1),
          y: stackTop.toFixed(1),
          width: (binWidth - 2).toFixed(1),
          height: height.toFixed(1),
          class: `segment segment-${category}`,
          "data-bin": String(i),
          "data-category": category,
          "data-count": String(count),
        }),
      );
    }
  }
  return svg;
}

export function evolutionLines(evolution: YearPoint[]): Element {
  if (evolution.length === 0) return emptyNote("evolution");
  const svg = chartSvg();
  const step = evolution.length > 1 ? (WIDTH - 2 * PAD) / (evolution.length - 1) : 0;
  const pointy = (value: number) => HEIGHT - PAD - value * (HEIGHT - 2 * PAD);
  const lines: Array<["rationale" | "decision", (p: YearPoint) => number]> = [
    ["rationale", (p) => p.avg_rationale_density],
    ["decision", (p) => p.avg_decision_density],
  ];
  for (const [category, pick] of lines) {
    const points = evolution
      .map((point, i) => `${(PAD + i * step).toFixed(1)},${pointy(pick(point)).toFixed(1)}`)
      .join(" ");
    svg.append(
      svgEl("polyline", {
        points,
        fill: "none",
        class: `line line-${category}`,
        "data-category": category,
      }),
    );
  }
  evolution.forEach((point, i) => {
    const label = svgEl("text", {
      x: (PAD + i * step).toFixed(1),
      y: String(HEIGHT - PAD + 16),
      class: "axis-label",
      "data-year": String(point.year),
      "data-rationale": String(point.avg_rationale_density),
      "data-decision": String(point.avg_decision_density),
    });
    label.textContent = String(point.year);
    svg.append(label);
  });
  return svg;
}
