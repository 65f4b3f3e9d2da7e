import { ApiClient } from "./api.js";
import { buildChartModel } from "./explanationChart.js";
import { renderGraphSvg } from "./graphSvg.js";
import {
  buildTranslationView,
  type ErrorView,
  type TranslationView,
} from "./viewModel.js";
import type { TokenExplanation } from "./types.js";

interface Panels {
  dbSelect: HTMLSelectElement;
  queryInput: HTMLInputElement;
  submitButton: HTMLButtonElement;
  graphPanel: HTMLElement;
  predictionPanel: HTMLElement;
  resultPanel: HTMLElement;
  popupPanel: HTMLElement;
  errorBanner: HTMLElement;
}

/** Wire the single-page layout: query input, schema graph, prediction
 * table with explanation pop-ups, and the explained-SQL result panel. */
export class App {
  private view: TranslationView | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly panels: Panels,
  ) {
    panels.queryInput.addEventListener("input", () => {
      panels.submitButton.disabled = panels.queryInput.value.trim() === "";
    });
    panels.submitButton.disabled = true;
    panels.submitButton.addEventListener("click", () => {
      void this.submit();
    });
  }

  async start(): Promise<void> {
    const dbs = await this.client.listDbs();
    this.panels.dbSelect.replaceChildren(
      ...dbs.map((db) => new Option(db, db)),
    );
    if (dbs.length > 0) {
      const graph = await this.client.schemaGraph(dbs[0]);
      this.panels.graphPanel.innerHTML = renderGraphSvg(graph);
    }
  }

  async submit(): Promise<void> {
    const db = this.panels.dbSelect.value;
    const query = this.panels.queryInput.value.trim();
    if (query === "") {
      return;
    }
    const response = await this.client.translate({ db, query });
    const view = buildTranslationView(response);
    if (view.kind === "error") {
      this.renderError(view);
      return;
    }
    this.view = view;
    this.panels.errorBanner.textContent = "";
    // A new translation replaces, never accumulates, highlights.
    this.panels.graphPanel.innerHTML = renderGraphSvg(view.graph);
    this.renderPredictions(view);
    this.renderResult(view);
  }

  async showExplanation(tokenIndex: number): Promise<void> {
    if (this.view === null) {
      return;
    }
    const row = this.view.predictionRows[tokenIndex];
    if (row === undefined || !row.explainable) {
      return;
    }
    const payload = await this.client.explainToken({
      db: this.panels.dbSelect.value,
      query: this.view.query,
      token_index: tokenIndex,
    });
    if (payload.error !== undefined) {
      this.panels.popupPanel.textContent = `${payload.error.stage}: ${payload.error.message}`;
      return;
    }
    this.renderPopup(payload);
  }

  private renderError(view: ErrorView): void {
    this.panels.errorBanner.textContent = `${view.stage}: ${view.message}`;
  }

  private renderPredictions(view: TranslationView): void {
    const rows = view.predictionRows.map((row) => {
      const tr = document.createElement("tr");
      tr.dataset.explainable = String(row.explainable);
      for (const cell of [row.token, row.typeTag, row.schemaTag]) {
        const td = document.createElement("td");
        td.textContent = cell;
        tr.appendChild(td);
      }
      if (row.explainable) {
        tr.addEventListener("click", () => {
          void this.showExplanation(row.index);
        });
      }
      return tr;
    });
    this.panels.predictionPanel.replaceChildren(...rows);
  }

  private renderResult(view: TranslationView): void {
    const sql = document.createElement("pre");
    sql.textContent = view.sql;
    const list = document.createElement("ul");
    for (const entry of view.explanationRows) {
      const item = document.createElement("li");
      item.textContent = `${entry.part}: ${entry.reason}`;
      list.appendChild(item);
    }
    this.panels.resultPanel.replaceChildren(sql, list);
  }

  private renderPopup(explanation: TokenExplanation): void {
    const model = buildChartModel(explanation);
    const parts: string[] = [];
    if (model.degenerate) {
      parts.push("surrogate fit degenerate: no reliable contributions");
    }
    for (const bar of model.bars) {
      parts.push(`${bar.token} [${bar.label}]: ${bar.score.toFixed(4)}`);
    }
    parts.push(`local prediction: ${model.localPrediction.toFixed(4)}`);
    this.panels.popupPanel.textContent = parts.join("\n");
  }
}
