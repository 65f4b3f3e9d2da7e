"""Relational schema descriptions and their JSON file format.

Schema files are UTF-8 JSON::

    {"name": str,
     "tables": [{"name": str,
                 "columns": [{"name": str, "type": "text"|"integer"|"real",
                              "pk": bool}]}],
     "foreign_keys": [{"table": str, "column": str,
                       "ref_table": str, "ref_column": str}]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import SchemaError

DATA_TYPES = ("text", "integer", "real")


@dataclass(frozen=True)
class Column:
    name: str
    data_type: str = "text"
    is_primary_key: bool = False


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple[Column, ...] = ()

    def column(self, name: str) -> Column | None:
        for col in self.columns:
            if col.name == name:
                return col
        return None


@dataclass(frozen=True)
class ForeignKey:
    table: str
    column: str
    ref_table: str
    ref_column: str


@dataclass(frozen=True)
class Schema:
    name: str
    tables: tuple[Table, ...] = ()
    foreign_keys: tuple[ForeignKey, ...] = ()
    _by_name: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._by_name.update({t.name: t for t in self.tables})
        self._validate()

    def _validate(self):
        seen_tables = set()
        for table in self.tables:
            if table.name in seen_tables:
                raise SchemaError(f"duplicate table name: {table.name!r}")
            seen_tables.add(table.name)
            seen_cols = set()
            for col in table.columns:
                if col.name in seen_cols:
                    raise SchemaError(
                        f"duplicate column {col.name!r} in table {table.name!r}"
                    )
                seen_cols.add(col.name)
                if col.data_type not in DATA_TYPES:
                    raise SchemaError(
                        f"unknown data type {col.data_type!r} for "
                        f"{table.name}.{col.name}"
                    )
        for fk in self.foreign_keys:
            for tbl, col in ((fk.table, fk.column), (fk.ref_table, fk.ref_column)):
                table = self._by_name.get(tbl)
                if table is None:
                    raise SchemaError(
                        f"foreign key references missing table {tbl!r}"
                    )
                if table.column(col) is None:
                    raise SchemaError(
                        f"foreign key references missing column {tbl}.{col}"
                    )

    def table(self, name: str) -> Table | None:
        return self._by_name.get(name)

    def has_table(self, name: str) -> bool:
        return name in self._by_name

    def has_column(self, table: str, column: str) -> bool:
        tbl = self._by_name.get(table)
        return tbl is not None and tbl.column(column) is not None

    def key_columns(self) -> set[tuple[str, str]]:
        """(table, column) pairs that are primary or foreign keys."""
        keys = set()
        for table in self.tables:
            for col in table.columns:
                if col.is_primary_key:
                    keys.add((table.name, col.name))
        for fk in self.foreign_keys:
            keys.add((fk.table, fk.column))
            keys.add((fk.ref_table, fk.ref_column))
        return keys

    def non_key_columns(self) -> list[tuple[str, str]]:
        """Semantics-bearing (table, column) pairs eligible as schema tags."""
        keys = self.key_columns()
        out = []
        for table in self.tables:
            for col in table.columns:
                if (table.name, col.name) not in keys:
                    out.append((table.name, col.name))
        return out


def load_schema(source: str) -> Schema:
    """Parse a schema-description JSON text into a validated Schema."""
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"schema parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise SchemaError("schema file must contain a JSON object")
    try:
        tables = tuple(
            Table(
                name=t["name"],
                columns=tuple(
                    Column(
                        name=c["name"],
                        data_type=c.get("type", "text"),
                        is_primary_key=bool(c.get("pk", False)),
                    )
                    for c in t.get("columns", [])
                ),
            )
            for t in raw.get("tables", [])
        )
        fks = tuple(
            ForeignKey(
                table=f["table"],
                column=f["column"],
                ref_table=f["ref_table"],
                ref_column=f["ref_column"],
            )
            for f in raw.get("foreign_keys", [])
        )
        name = raw.get("name", "")
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed schema description: {exc}") from exc
    return Schema(name=name, tables=tables, foreign_keys=fks)


def load_schema_file(path) -> Schema:
    with open(path, encoding="utf-8") as fh:
        return load_schema(fh.read())
