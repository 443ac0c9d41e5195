// Browser entry point: builds one select per cube dimension and one
// bar chart per measure, wiring slicer changes through the Dashboard
// controller. Charts are plain divs with proportional widths; the data
// is always the server's aggregate rows.

import { ApiClient } from "./api.js";
import { Dashboard, type ChartModel, type ChartSpec } from "./dashboard.js";
import { formatNumber } from "./format.js";
import {
  CORRELATION_FOOTNOTE,
  condensedSummary,
  needsCorrelationFootnote,
  verdictRows,
} from "./verdicts.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function renderCharts(container: HTMLElement, models: ChartModel[]): void {
  container.replaceChildren();
  for (const model of models) {
    const card = el("div", "chart-card");
    card.append(el("h3", undefined, `${model.measure} by ${model.groupBy}`));
    if (model.bars.length === 0) {
      card.append(el("p", "empty-state", "No rows match the current slicer."));
    }
    const max = Math.max(...model.bars.map((b) => Math.abs(b.value)), 1e-12);
    for (const bar of model.bars) {
      const row = el("div", "bar-row");
      row.append(el("span", "bar-label", bar.label));
      const track = el("div", "bar-track");
      const fill = el("div", "bar-fill");
      fill.style.width = `${(100 * Math.abs(bar.value)) / max}%`;
      track.append(fill);
      row.append(track);
      row.append(el("span", "bar-value", formatNumber(bar.value)));
      card.append(row);
    }
    container.append(card);
  }
}

function showError(banner: HTMLElement, message: string): void {
  banner.textContent = message;
  banner.hidden = false;
}

async function renderVerdicts(api: ApiClient, analysisId: string, host: HTMLElement) {
  const run = await api.loadAnalysis(analysisId);
  const table = el("table", "verdicts");
  const head = el("tr");
  for (const label of ["Test", "Method", "Factors", "Statistic", "Sig.", "Decision"]) {
    head.append(el("th", undefined, label));
  }
  table.append(head);
  for (const row of verdictRows(run)) {
    const tr = el("tr");
    for (const cell of [row.testId, row.method, row.factors, row.statistic, row.sig, row.decision]) {
      tr.append(el("td", undefined, cell));
    }
    table.append(tr);
  }
  host.append(table);
  if (needsCorrelationFootnote(run)) {
    host.append(el("p", "footnote", `** ${CORRELATION_FOOTNOTE}`));
  }
  for (const line of condensedSummary(run)) {
    host.append(el("p", "condensed", line));
  }
}

export async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const cubeId = params.get("cube");
  const analysisId = params.get("analysis");
  const banner = document.getElementById("error-banner")!;
  const slicerHost = document.getElementById("slicer")!;
  const chartsHost = document.getElementById("charts")!;
  const verdictsHost = document.getElementById("verdicts")!;

  if (!cubeId) {
    showError(banner, "Missing ?cube=<id> in the URL.");
    return;
  }
  const api = new ApiClient();

  let cube;
  try {
    cube = await api.loadCube(cubeId);
  } catch (err) {
    showError(banner, `Failed to load cube: ${err instanceof Error ? err.message : err}`);
    return;
  }

  const charts: ChartSpec[] = cube.measures.map((measure) => ({
    measure,
    groupBy: cube.dimensions[0].name,
  }));
  const dashboard = new Dashboard(api, cubeId, cube.dimensions, charts, {
    onCharts: (models) => {
      banner.hidden = true;
      renderCharts(chartsHost, models);
    },
    onError: (message) => showError(banner, message),
  });

  for (const dim of cube.dimensions) {
    const label = el("label", "slicer-field", `${dim.name} `);
    const selectNode = el("select");
    selectNode.append(new Option("(all)", ""));
    for (const level of dim.levels) {
      selectNode.append(new Option(level, level));
    }
    selectNode.addEventListener("change", () => {
      if (selectNode.value === "") {
        dashboard.clearDimension(dim.name);
      } else {
        dashboard.select(dim.name, selectNode.value);
      }
    });
    label.append(selectNode);
    slicerHost.append(label);
  }
  const reset = el("button", undefined, "Clear slicer");
  reset.addEventListener("click", () => {
    for (const selectNode of slicerHost.querySelectorAll("select")) {
      selectNode.value = "";
    }
    dashboard.clearAll();
  });
  slicerHost.append(reset);

  await dashboard.refresh();

  if (analysisId) {
    try {
      await renderVerdicts(api, analysisId, verdictsHost);
    } catch (err) {
      showError(banner, `Failed to load analysis: ${err instanceof Error ? err.message : err}`);
    }
  }
}

if (typeof document !== "undefined" && document.getElementById("charts")) {
  void boot();
}
