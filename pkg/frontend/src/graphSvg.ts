import type { GraphPayload } from "./types.js";

export interface LayoutNode {
  id: string;
  kind: "table" | "attr";
  label: string;
  highlight: boolean;
  x: number;
  y: number;
}

const COLUMN_X = { table: 80, attr: 320 } as const;
const ROW_STEP = 70;
const ACCENT = "#2e86de";
const NEUTRAL = "#8395a7";

/** Deterministic two-column layout: tables on the left, attributes on
 * the right, each sorted by node id so renders are reproducible. */
export function layoutGraph(graph: GraphPayload): LayoutNode[] {
  const byKind = { table: 0, attr: 0 };
  return [...graph.nodes]
    .sort((a, b) => (a.id < b.id ? -1 : a.id > b.id ? 1 : 0))
    .map((node) => ({
      ...node,
      x: COLUMN_X[node.kind],
      y: 50 + ROW_STEP * byKind[node.kind]++,
    }));
}

/** Read-only SVG panel: rectangles for tables, ellipses for attributes,
 * the accent color marks the current join path. */
export function renderGraphSvg(graph: GraphPayload): string {
  const nodes = layoutGraph(graph);
  const position = new Map(nodes.map((n) => [n.id, n]));
  const parts: string[] = [];
  const height = Math.max(...nodes.map((n) => n.y), 50) + 60;
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 420 ${height}">`,
  );
  for (const edge of graph.edges) {
    const a = position.get(edge.a);
    const b = position.get(edge.b);
    if (a === undefined || b === undefined) {
      continue;
    }
    const stroke = edge.highlight ? ACCENT : NEUTRAL;
    const width = edge.highlight ? 3 : 1;
    parts.push(
      `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" ` +
        `stroke="${stroke}" stroke-width="${width}" data-edge="${edge.a}|${edge.b}"/>`,
    );
  }
  for (const node of nodes) {
    const stroke = node.highlight ? ACCENT : NEUTRAL;
    if (node.kind === "table") {
      parts.push(
        `<rect x="${node.x - 55}" y="${node.y - 18}" width="110" height="36" ` +
          `fill="white" stroke="${stroke}" stroke-width="2" data-node="${node.id}"/>`,
      );
    } else {
      parts.push(
        `<ellipse cx="${node.x}" cy="${node.y}" rx="55" ry="18" ` +
          `fill="white" stroke="${stroke}" stroke-width="2" data-node="${node.id}"/>`,
      );
    }
    parts.push(
      `<text x="${node.x}" y="${node.y + 5}" text-anchor="middle" ` +
        `font-size="12">${escapeXml(node.label)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}
