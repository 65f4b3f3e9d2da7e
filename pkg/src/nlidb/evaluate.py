"""Evaluation harness: token accuracy, translation accuracy, reports.

Scoring is exact-match over canonical SQL, which is strict (false
negatives are possible, false positives are not) and replaces manual
semantic judgment. Nested gold queries are unattempted by design and
reported in their own column; they stay in the overall denominator.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

from .canonical import (
    CanonicalizationError,
    Category,
    categorize_gold_sql,
    sql_equivalent,
)
from .errors import NlidbError
from .gold import GoldQuery
from .tags import RELATION_TAGS, TypeTag
from .translate import render_sql, translate_tagged_query
from .workspace import WorkspaceBundle


@dataclass
class QueryVerdict:
    index: int
    tokens: list[str]
    category: str
    predicted_sql: str | None
    gold_sql: str | None
    correct: bool
    error: str | None = None


@dataclass
class EvalReport:
    relation_accuracy: float | None
    non_relation_accuracy: float | None
    relation_tokens: int
    non_relation_tokens: int
    translation_accuracy: float | None
    correct: int
    total: int
    category_counts: dict[str, int] = field(default_factory=dict)
    category_correct: dict[str, int] = field(default_factory=dict)
    verdicts: list[QueryVerdict] = field(default_factory=list)

    def category_accuracy(self, category: str) -> float | None:
        count = self.category_counts.get(category, 0)
        if count == 0:
            return None
        return self.category_correct.get(category, 0) / count

    def to_dict(self) -> dict:
        return {
            "relation_accuracy": self.relation_accuracy,
            "non_relation_accuracy": self.non_relation_accuracy,
            "relation_tokens": self.relation_tokens,
            "non_relation_tokens": self.non_relation_tokens,
            "translation_accuracy": self.translation_accuracy,
            "correct": self.correct,
            "total": self.total,
            "categories": {
                name: {
                    "count": self.category_counts.get(name, 0),
                    "correct": self.category_correct.get(name, 0),
                    "accuracy": self.category_accuracy(name),
                }
                for name in [c.value for c in Category]
            },
            "verdicts": [
                {
                    "index": v.index,
                    "query": " ".join(v.tokens),
                    "category": v.category,
                    "predicted_sql": v.predicted_sql,
                    "gold_sql": v.gold_sql,
                    "correct": v.correct,
                    "error": v.error,
                }
                for v in self.verdicts
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _tag_accuracy(predicted, gold: GoldQuery):
    """Per-token hits on the relation and value (non-relation) splits."""
    rel_hits = rel_total = val_hits = val_total = 0
    for i, gold_type in enumerate(gold.tagged.type_tags):
        match = (
            predicted.type_tags[i] is gold_type
            and predicted.schema_tags[i] == gold.tagged.schema_tags[i]
        )
        if gold_type in RELATION_TAGS:
            rel_total += 1
            rel_hits += match
        elif gold_type is TypeTag.VALUE:
            val_total += 1
            val_hits += match
    return rel_hits, rel_total, val_hits, val_total


def run_eval(
    bundle: WorkspaceBundle,
    corpus: list[GoldQuery] | None = None,
    tagger_mode: str = "gold",
) -> EvalReport:
    corpus = bundle.gold if corpus is None else corpus
    composite = bundle.tagger() if tagger_mode == "auto" else None

    rel_hits = rel_total = val_hits = val_total = 0
    correct = 0
    category_counts: dict[str, int] = {}
    category_correct: dict[str, int] = {}
    verdicts = []

    for idx, entry in enumerate(corpus):
        if tagger_mode == "gold":
            predicted = entry.tagged
        else:
            predicted = composite.tag(entry.tagged.tokens)
        h, t, vh, vt = _tag_accuracy(predicted, entry)
        rel_hits, rel_total = rel_hits + h, rel_total + t
        val_hits, val_total = val_hits + vh, val_total + vt

        if entry.gold_sql is not None:
            try:
                category = categorize_gold_sql(entry.gold_sql).value
            except CanonicalizationError:
                category = Category.MULTI_TABLE.value
        else:
            category = Category.MULTI_TABLE.value
        category_counts[category] = category_counts.get(category, 0) + 1

        predicted_sql = None
        error = None
        is_correct = False
        try:
            sql = translate_tagged_query(
                bundle.schema, bundle.graph, predicted, bundle.config
            )
            predicted_sql = render_sql(sql)
        except NlidbError as exc:
            error = f"{exc.stage}: {exc}"
        if category == Category.NESTED.value:
            # Unattempted by design: the translator has no nested form.
            is_correct = False
        elif predicted_sql is not None and entry.gold_sql is not None:
            is_correct = sql_equivalent(predicted_sql, entry.gold_sql)
        if is_correct:
            correct += 1
            category_correct[category] = category_correct.get(category, 0) + 1
        verdicts.append(
            QueryVerdict(
                index=idx,
                tokens=list(entry.tagged.tokens),
                category=category,
                predicted_sql=predicted_sql,
                gold_sql=entry.gold_sql,
                correct=is_correct,
                error=error,
            )
        )

    total = len(corpus)
    return EvalReport(
        relation_accuracy=rel_hits / rel_total if rel_total else None,
        non_relation_accuracy=val_hits / val_total if val_total else None,
        relation_tokens=rel_total,
        non_relation_tokens=val_total,
        translation_accuracy=correct / total if total else None,
        correct=correct,
        total=total,
        category_counts=category_counts,
        category_correct=category_correct,
        verdicts=verdicts,
    )


def report_csv(report: EvalReport) -> str:
    """Delimited per-query verdicts plus summary rows."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["index", "query", "category", "correct", "predicted_sql", "gold_sql", "error"]
    )
    for v in report.verdicts:
        writer.writerow(
            [
                v.index,
                " ".join(v.tokens),
                v.category,
                int(v.correct),
                v.predicted_sql or "",
                v.gold_sql or "",
                v.error or "",
            ]
        )
    writer.writerow([])
    writer.writerow(["summary", "correct", report.correct])
    writer.writerow(["summary", "total", report.total])
    writer.writerow(["summary", "relation_accuracy", report.relation_accuracy])
    writer.writerow(
        ["summary", "non_relation_accuracy", report.non_relation_accuracy]
    )
    for name in [c.value for c in Category]:
        writer.writerow(
            [
                "category",
                name,
                report.category_counts.get(name, 0),
                report.category_correct.get(name, 0),
            ]
        )
    return buf.getvalue()


def write_report(report: EvalReport, out_dir, stem: str = "eval") -> list[str]:
    """Write the delimited report and accuracy figures; returns paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / f"{stem}.csv"
    csv_path.write_text(report_csv(report), encoding="utf-8")
    written.append(str(csv_path))

    json_path = out / f"{stem}.json"
    json_path.write_text(report.to_json(), encoding="utf-8")
    written.append(str(json_path))

    names = [c.value for c in Category]
    counts = [report.category_counts.get(n, 0) for n in names]
    corrects = [report.category_correct.get(n, 0) for n in names]
    fig, ax = plt.subplots(figsize=(6, 4))
    x = range(len(names))
    ax.bar(x, counts, width=0.6, label="queries", color="#c8d6e5")
    ax.bar(x, corrects, width=0.6, label="correct", color="#2e86de")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("queries")
    ax.set_title("translation results by category")
    ax.legend()
    fig.tight_layout()
    cat_path = out / f"{stem}_categories.png"
    fig.savefig(cat_path, dpi=120)
    plt.close(fig)
    written.append(str(cat_path))

    fig, ax = plt.subplots(figsize=(5, 4))
    labels = ["relation", "non-relation"]
    values = [report.relation_accuracy or 0.0, report.non_relation_accuracy or 0.0]
    ax.bar(labels, values, color=["#10ac84", "#ee5253"])
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("token accuracy")
    ax.set_title("keyword-mapping accuracy")
    fig.tight_layout()
    tok_path = out / f"{stem}_token_accuracy.png"
    fig.savefig(tok_path, dpi=120)
    plt.close(fig)
    written.append(str(tok_path))

    return written


def run_bench(
    bundle: WorkspaceBundle, corpus: list[GoldQuery] | None = None, runs: int = 100
) -> list[dict]:
    """Median tagging/translation wall time per query over ``runs`` runs."""
    import statistics

    corpus = bundle.gold if corpus is None else corpus
    composite = bundle.tagger()
    rows = []
    for idx, entry in enumerate(corpus):
        tokens = entry.tagged.tokens
        tag_times, translate_times = [], []
        for _ in range(runs):
            start = time.perf_counter()
            composite.tag(tokens)
            tag_times.append(time.perf_counter() - start)
            start = time.perf_counter()
            try:
                translate_tagged_query(
                    bundle.schema, bundle.graph, entry.tagged, bundle.config
                )
            except NlidbError:
                pass
            translate_times.append(time.perf_counter() - start)
        rows.append(
            {
                "index": idx,
                "query": " ".join(tokens),
                "tag_ms": statistics.median(tag_times) * 1000,
                "translate_ms": statistics.median(translate_times) * 1000,
            }
        )
    return rows


def write_bench(rows: list[dict], out_dir, stem: str = "bench") -> list[str]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / f"{stem}.csv"
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["index", "query", "tag_ms", "translate_ms"]
    )
    writer.writeheader()
    writer.writerows(rows)
    csv_path.write_text(buf.getvalue(), encoding="utf-8")
    written.append(str(csv_path))

    fig, ax = plt.subplots(figsize=(7, 4))
    xs = [r["index"] for r in rows]
    ax.plot(xs, [r["tag_ms"] for r in rows], marker="o", label="tagging")
    ax.plot(xs, [r["translate_ms"] for r in rows], marker="s", label="translation")
    ax.set_xlabel("query")
    ax.set_ylabel("median ms")
    ax.set_title("per-query timings")
    ax.legend()
    fig.tight_layout()
    fig_path = out / f"{stem}.png"
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    written.append(str(fig_path))
    return written
