/** Wire shapes of the HTTP JSON API. The UI is a pure consumer: every
 * displayed string originates from these payloads. */

export interface TagRow {
  token: string;
  type_tag: string;
  schema_tag: string;
}

export interface GraphNode {
  id: string;
  kind: "table" | "attr";
  label: string;
  highlight: boolean;
}

export interface GraphEdge {
  a: string;
  b: string;
  highlight: boolean;
}

export interface GraphPayload {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface WherePart {
  kind: "join" | "value";
  column: string;
  op: string;
  literal: string | null;
  left: string | null;
  right: string | null;
}

export interface AggregatePart {
  func: string;
  anchor_token: string;
  anchor_type: string;
  anchor_schema: string;
  keyword: string;
}

export interface SqlExplanation {
  part: string;
  reason: string;
}

export interface TranslationResult {
  sql: string;
  select: string;
  from: string[];
  where: WherePart[];
  aggregate: AggregatePart | null;
  explanations: SqlExplanation[];
  join_path_nodes: string[];
}

export interface Contribution {
  index: number;
  token: string | null;
  score: number;
}

export interface TokenExplanation {
  token_index: number;
  target_tag: string;
  contributions: Contribution[];
  intercept: number;
  samples: number;
  seed: number;
  status: "ok" | "degenerate";
}

export interface ApiError {
  stage: string;
  message: string;
}

export interface TranslateResponse {
  db: string;
  query: string;
  tokens?: string[];
  tags?: TagRow[];
  result?: TranslationResult;
  graph?: GraphPayload;
  token_explanations?: TokenExplanation[];
  error?: ApiError;
}

export interface TranslateRequest {
  db: string;
  query: string;
  tagger?: "gold" | "auto";
  explain?: boolean;
}

export interface ExplainRequest {
  db: string;
  query: string;
  token_index: number;
  tagger?: "gold" | "auto";
}

export type ExplainResponse = TokenExplanation & { error?: ApiError };
