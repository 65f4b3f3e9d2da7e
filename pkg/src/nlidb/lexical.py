"""Fuzzy matching of tokens against table and column names.

Similarity is normalized Levenshtein: 1 - distance / max(len(a), len(b)),
compared case-insensitively.
"""

from __future__ import annotations

from .schema import Schema
from .tags import TaggedQuery, TypeTag, all_other, point_mass
from .tokenizer import PLACEHOLDER, token_texts


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    a, b = a.lower(), b.lower()
    if not a and not b:
        return 1.0
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


def map_relations_lexical(
    schema: Schema, tokens, threshold: float = 0.8
) -> TaggedQuery:
    """Tag tokens TABLE or ATTR by edit-distance similarity to names.

    The best match at or above ``threshold`` wins; ties break toward
    higher similarity, then lexicographically smaller name.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be in [0, 1]")
    # (candidate name to compare, type tag, schema tag)
    candidates = [(t.name, TypeTag.TABLE, t.name) for t in schema.tables]
    candidates += [
        (col, TypeTag.ATTR, f"{table}.{col}")
        for table, col in schema.non_key_columns()
    ]
    texts = token_texts(tokens)
    result = all_other(texts)
    for i, text in enumerate(texts):
        if text == PLACEHOLDER:
            continue
        best = None  # (similarity, schema_tag, type_tag)
        for name, type_tag, schema_tag in candidates:
            sim = similarity(text, name)
            if sim < threshold:
                continue
            key = (-sim, schema_tag)
            if best is None or key < best[0]:
                best = (key, type_tag, schema_tag)
        if best is not None:
            _, type_tag, schema_tag = best
            result.type_tags[i] = type_tag
            result.schema_tags[i] = schema_tag
            result.distributions[i] = point_mass(schema_tag)
    return result
