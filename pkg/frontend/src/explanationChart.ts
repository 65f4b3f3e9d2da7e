import type { TokenExplanation } from "./types.js";

export interface ChartBar {
  index: number;
  token: string;
  score: number;
  /** Positive bars are labeled with the tag, negative with "NOT <tag>". */
  label: string;
}

export interface ChartModel {
  targetTag: string;
  bars: ChartBar[];
  intercept: number;
  /** Surrogate prediction for the unperturbed query: intercept plus the
   * sum of all bar scores. Shown in the pop-up footer. */
  localPrediction: number;
  degenerate: boolean;
}

/** Pop-up content: signed horizontal bars sorted by |score| descending. */
export function buildChartModel(explanation: TokenExplanation): ChartModel {
  const bars = explanation.contributions
    .filter((c) => c.score !== 0)
    .map((c) => ({
      index: c.index,
      token: c.token ?? `token ${c.index}`,
      score: c.score,
      label:
        c.score >= 0
          ? explanation.target_tag
          : `NOT ${explanation.target_tag}`,
    }))
    .sort((a, b) => Math.abs(b.score) - Math.abs(a.score));
  const total = explanation.contributions.reduce((s, c) => s + c.score, 0);
  return {
    targetTag: explanation.target_tag,
    bars,
    intercept: explanation.intercept,
    localPrediction: explanation.intercept + total,
    degenerate: explanation.status === "degenerate",
  };
}
