"""Two-level tag vocabulary and the tagged-query container.

Each token carries a coarse type tag (TABLE, TABLEREF, ATTR, ATTRREF,
VALUE, COND, O) and a fine schema tag (a table name, a dotted
table.column, COND or O). The two levels must stay consistent:
value/attribute tags are dotted, table tags are bare table names.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import TagError
from .schema import Schema


class TypeTag(str, enum.Enum):
    TABLE = "TABLE"
    TABLEREF = "TABLEREF"
    ATTR = "ATTR"
    ATTRREF = "ATTRREF"
    VALUE = "VALUE"
    COND = "COND"
    O = "O"


RELATION_TAGS = (TypeTag.TABLE, TypeTag.TABLEREF, TypeTag.ATTR, TypeTag.ATTRREF)
DOTTED_TAGS = (TypeTag.VALUE, TypeTag.ATTR, TypeTag.ATTRREF)
TABLE_TAGS = (TypeTag.TABLE, TypeTag.TABLEREF)

PROB_TOLERANCE = 1e-9


def check_pair(type_tag: TypeTag, schema_tag: str, schema: Schema | None = None):
    """Raise TagError unless the (type, schema) tag pair is consistent."""
    if type_tag in DOTTED_TAGS:
        if "." not in schema_tag:
            raise TagError(
                f"{type_tag.value} requires a dotted schema tag, got {schema_tag!r}"
            )
        table, _, column = schema_tag.partition(".")
        if schema is not None:
            if not schema.has_column(table, column):
                raise TagError(f"schema tag names unknown column: {schema_tag!r}")
            if (table, column) not in set(schema.non_key_columns()):
                raise TagError(
                    f"schema tag must name a non-key column: {schema_tag!r}"
                )
    elif type_tag in TABLE_TAGS:
        if "." in schema_tag or schema_tag in ("COND", "O"):
            raise TagError(
                f"{type_tag.value} requires a table-name schema tag, "
                f"got {schema_tag!r}"
            )
        if schema is not None and not schema.has_table(schema_tag):
            raise TagError(f"schema tag names unknown table: {schema_tag!r}")
    elif type_tag is TypeTag.COND:
        if schema_tag != "COND":
            raise TagError(f"COND type requires COND schema tag, got {schema_tag!r}")
    elif type_tag is TypeTag.O:
        if schema_tag != "O":
            raise TagError(f"O type requires O schema tag, got {schema_tag!r}")


@dataclass
class TaggedQuery:
    """Parallel token / type-tag / schema-tag arrays, plus optional
    per-token probability maps over schema tags."""

    tokens: list[str]
    type_tags: list[TypeTag]
    schema_tags: list[str]
    distributions: list[dict[str, float]] | None = None
    offsets: list[int] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.tokens)
        if len(self.type_tags) != n or len(self.schema_tags) != n:
            raise TagError("tag arrays must match token count")
        if self.distributions is not None and len(self.distributions) != n:
            raise TagError("distribution array must match token count")

    def __len__(self):
        return len(self.tokens)

    def validate(self, schema: Schema | None = None):
        for type_tag, schema_tag in zip(self.type_tags, self.schema_tags):
            check_pair(type_tag, schema_tag, schema)
        if self.distributions is not None:
            for i, dist in enumerate(self.distributions):
                total = sum(dist.values())
                if not math.isclose(total, 1.0, abs_tol=PROB_TOLERANCE):
                    raise TagError(
                        f"distribution for token {i} sums to {total}, not 1"
                    )
                top = max(dist, key=lambda tag: (dist[tag], tag))
                if dist.get(self.schema_tags[i], 0.0) < dist[top]:
                    raise TagError(
                        f"distribution argmax for token {i} is {top!r}, "
                        f"but the emitted tag is {self.schema_tags[i]!r}"
                    )
        return self

    def rows(self):
        return list(zip(self.tokens, self.type_tags, self.schema_tags))


def point_mass(tag: str) -> dict[str, float]:
    return {tag: 1.0}


def all_other(tokens, offsets=None) -> TaggedQuery:
    """An all-O TaggedQuery over the given token texts."""
    n = len(tokens)
    return TaggedQuery(
        tokens=list(tokens),
        type_tags=[TypeTag.O] * n,
        schema_tags=["O"] * n,
        distributions=[point_mass("O") for _ in range(n)],
        offsets=list(offsets) if offsets else [],
    )
