import type {
  GraphPayload,
  SqlExplanation,
  TokenExplanation,
  TranslateResponse,
} from "./types.js";

export interface PredictionRow {
  index: number;
  token: string;
  typeTag: string;
  schemaTag: string;
  /** Rows tagged O are visibly inert: no explanation pop-up. */
  explainable: boolean;
}

export interface TranslationView {
  kind: "ok";
  query: string;
  predictionRows: PredictionRow[];
  graph: GraphPayload;
  sql: string;
  explanationRows: SqlExplanation[];
  tokenExplanations: Map<number, TokenExplanation>;
}

export interface ErrorView {
  kind: "error";
  query: string;
  stage: string;
  message: string;
}

/** Shape a translate response into the data each panel renders. */
export function buildTranslationView(
  response: TranslateResponse,
): TranslationView | ErrorView {
  if (response.error !== undefined) {
    return {
      kind: "error",
      query: response.query,
      stage: response.error.stage,
      message: response.error.message,
    };
  }
  const tags = response.tags ?? [];
  const predictionRows = tags.map((row, index) => ({
    index,
    token: row.token,
    typeTag: row.type_tag,
    schemaTag: row.schema_tag,
    explainable: row.type_tag !== "O",
  }));
  const tokenExplanations = new Map<number, TokenExplanation>();
  for (const exp of response.token_explanations ?? []) {
    tokenExplanations.set(exp.token_index, exp);
  }
  return {
    kind: "ok",
    query: response.query,
    predictionRows,
    graph: response.graph ?? { nodes: [], edges: [] },
    sql: response.result?.sql ?? "",
    explanationRows: response.result?.explanations ?? [],
    tokenExplanations,
  };
}

export function highlightedTables(view: TranslationView): string[] {
  return view.graph.nodes
    .filter((n) => n.kind === "table" && n.highlight)
    .map((n) => n.label)
    .sort();
}

export function explainableRowCount(view: TranslationView): number {
  return view.predictionRows.filter((r) => r.explainable).length;
}
