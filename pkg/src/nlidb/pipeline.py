"""End-to-end request handling: preprocess, tag, translate, explain.

This is the glue used by both the CLI and the HTTP service; all
responses are JSON-shaped dictionaries with deterministic key order.
"""

from __future__ import annotations

import json

from .compose import GoldTagger
from .errors import NlidbError, TagError
from .explain import explain_query, explain_token
from .graph import export_json
from .tags import TaggedQuery, TypeTag
from .tokenizer import preprocess_and_tokenize, token_texts
from .translate import SqlQuery, explain_sql, render_sql, translate_tagged_query
from .workspace import WorkspaceBundle


def sql_to_dict(q: SqlQuery) -> dict:
    where = [
        {
            "kind": "join",
            "column": f"{c.left_table}.{c.attribute}",
            "op": "=",
            "literal": None,
            "left": c.left_table,
            "right": c.right_table,
        }
        for c in q.joins
    ] + [
        {
            "kind": "value",
            "column": w.column,
            "op": w.operator,
            "literal": w.literal,
            "left": None,
            "right": None,
        }
        for w in q.values
    ]
    aggregate = None
    if q.aggregate is not None:
        aggregate = {
            "func": q.aggregate.func,
            "anchor_token": q.aggregate.anchor_token,
            "anchor_type": q.aggregate.anchor_type.value,
            "anchor_schema": q.aggregate.anchor_schema,
            "keyword": q.aggregate.keyword,
        }
    return {
        "sql": render_sql(q),
        "select": q.select,
        "from": list(q.from_tables),
        "where": where,
        "aggregate": aggregate,
        "explanations": explain_sql(q),
        "join_path_nodes": list(q.join_path_nodes),
    }


def _resolve_tagging(bundle: WorkspaceBundle, tokens, tagger: str):
    if tagger == "gold":
        gold = bundle.find_gold(token_texts(tokens))
        if gold is None:
            raise TagError(
                "no gold tags for this query in the workspace corpus",
                stage="tagging",
            )
        return gold.tagged, GoldTagger(gold.tagged)
    if tagger == "auto":
        composite = bundle.tagger()
        return composite.tag(tokens), composite
    raise TagError(f"unknown tagger mode {tagger!r}", stage="tagging")


def handle_translate(
    bundle: WorkspaceBundle,
    query: str,
    tagger: str = "gold",
    explain: bool = False,
) -> dict:
    """Run the full pipeline; errors surface as structured objects."""
    try:
        tokens = preprocess_and_tokenize(query)
        tagged, black_box = _resolve_tagging(bundle, tokens, tagger)
        sql = translate_tagged_query(bundle.schema, bundle.graph, tagged, bundle.config)
        response = {
            "db": bundle.name,
            "query": query,
            "tokens": token_texts(tokens),
            "tags": [
                {"token": tok, "type_tag": t.value, "schema_tag": s}
                for tok, t, s in tagged.rows()
            ],
            "result": sql_to_dict(sql),
            "graph": json.loads(
                export_json(bundle.graph, sql.join_path_nodes, sql.join_path_edges)
            ),
        }
        if explain:
            explanations = explain_query(black_box, tagged, bundle.config.explain)
            response["token_explanations"] = [
                e.to_dict(tagged.tokens) for e in explanations
            ]
        return response
    except NlidbError as exc:
        return {
            "db": bundle.name,
            "query": query,
            "error": {"stage": exc.stage, "message": str(exc)},
        }


def handle_explain_token(
    bundle: WorkspaceBundle, query: str, token_index: int, tagger: str = "gold"
) -> dict:
    try:
        from dataclasses import replace

        tokens = preprocess_and_tokenize(query)
        tagged, black_box = _resolve_tagging(bundle, tokens, tagger)
        config = replace(
            bundle.config.explain, seed=bundle.config.explain.seed ^ token_index
        )
        explanation = explain_token(black_box, tagged, token_index, config)
        return explanation.to_dict(tagged.tokens)
    except NlidbError as exc:
        return {
            "db": bundle.name,
            "query": query,
            "error": {"stage": exc.stage, "message": str(exc)},
        }
