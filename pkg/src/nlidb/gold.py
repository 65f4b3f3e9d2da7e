"""Gold tag corpus loading.

File format: one token per line as "token<TAB>type_tag<TAB>schema_tag",
blank line between queries, and an optional "# sql: <gold SQL>" comment
line before a block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TagError
from .schema import Schema
from .tags import TaggedQuery, TypeTag, point_mass


@dataclass
class GoldQuery:
    tagged: TaggedQuery
    gold_sql: str | None = None


def _finish_block(rows, sql, schema, blocks, lineno):
    if not rows:
        return
    tokens, type_tags, schema_tags = [], [], []
    for row_lineno, line in rows:
        parts = line.split("\t")
        if len(parts) != 3:
            raise TagError(
                f"line {row_lineno}: expected 'token\\ttype\\tschema', got {line!r}"
            )
        token, type_name, schema_tag = parts
        try:
            type_tag = TypeTag(type_name)
        except ValueError:
            raise TagError(f"line {row_lineno}: unknown type tag {type_name!r}")
        tokens.append(token)
        type_tags.append(type_tag)
        schema_tags.append(schema_tag)
    tagged = TaggedQuery(
        tokens=tokens,
        type_tags=type_tags,
        schema_tags=schema_tags,
        distributions=[point_mass(tag) for tag in schema_tags],
    )
    tagged.validate(schema)
    blocks.append(GoldQuery(tagged=tagged, gold_sql=sql))


def load_gold_tags(text: str, schema: Schema | None = None) -> list[GoldQuery]:
    blocks: list[GoldQuery] = []
    rows: list[tuple[int, str]] = []
    sql = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip("\n")
        if not stripped.strip():
            _finish_block(rows, sql, schema, blocks, lineno)
            rows, sql = [], None
        elif stripped.startswith("# sql:"):
            sql = stripped[len("# sql:") :].strip()
        elif stripped.startswith("#"):
            continue
        else:
            rows.append((lineno, stripped))
    _finish_block(rows, sql, schema, blocks, -1)
    return blocks
