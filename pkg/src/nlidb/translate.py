"""Tagged query + schema graph -> structured, explained SQL.

The table set is collected from the tags, a covering set of shortest
join paths is inferred over the schema graph, consecutive path triples
become equality join conditions, VALUE spans become predicates, and a
windowed keyword search decides the aggregate. Every emitted SQL part
carries a provenance record feeding the textual explanations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import PipelineConfig
from .errors import JoinPathError, TranslationError, UntranslatableQueryError
from .graph import SchemaGraph, TABLE_NODE, find_shortest_paths, table_id
from .schema import Schema
from .tags import RELATION_TAGS, TABLE_TAGS, TaggedQuery, TypeTag

# COND token text -> comparison operator, used only when the operator
# extension is enabled (equality is the default everywhere).
COND_OPERATORS = {
    "more": ">", "greater": ">", "after": ">", "above": ">",
    "less": "<", "fewer": "<", "before": "<", "below": "<",
    "least": ">=", "most": "<=",
}


@dataclass(frozen=True)
class JoinCondition:
    left_table: str
    right_table: str
    attribute: str

    def key(self):
        return (self.attribute, frozenset((self.left_table, self.right_table)))

    def render(self) -> str:
        return (
            f"{self.left_table}.{self.attribute} = "
            f"{self.right_table}.{self.attribute}"
        )


@dataclass(frozen=True)
class WhereCondition:
    column: str
    operator: str
    literal: str
    token_span: tuple[int, int]  # inclusive token index range

    def render(self) -> str:
        escaped = self.literal.replace('"', '\\"')
        return f'{self.column} {self.operator} "{escaped}"'


@dataclass(frozen=True)
class AggregateClause:
    func: str  # SUM | COUNT | AVG
    anchor_token: str
    anchor_type: TypeTag
    anchor_schema: str
    keyword: str
    keyword_index: int
    anchor_index: int


@dataclass
class JoinPlan:
    paths: list[list[str]]
    conditions: list[JoinCondition]
    intermediate_tables: list[str]

    def path_tables(self) -> list[str]:
        """Tables in order of first appearance along the paths."""
        seen, out = set(), []
        for path in self.paths:
            for node in path[::2]:
                label = node.split(":", 1)[1]
                if label not in seen:
                    seen.add(label)
                    out.append(label)
        return out

    def node_ids(self) -> list[str]:
        seen, out = set(), []
        for path in self.paths:
            for node in path:
                if node not in seen:
                    seen.add(node)
                    out.append(node)
        return out

    def edge_ids(self) -> list[tuple[str, str]]:
        seen, out = set(), []
        for path in self.paths:
            for a, b in zip(path, path[1:]):
                edge = tuple(sorted((a, b)))
                if edge not in seen:
                    seen.add(edge)
                    out.append(edge)
        return out


@dataclass(frozen=True)
class Provenance:
    part: str
    kind: str
    reason: str


@dataclass
class SqlQuery:
    select: str
    from_tables: list[str]
    joins: list[JoinCondition]
    values: list[WhereCondition]
    aggregate: AggregateClause | None
    provenance: list[Provenance] = field(default_factory=list)
    join_path_nodes: list[str] = field(default_factory=list)
    join_path_edges: list[tuple[str, str]] = field(default_factory=list)


def collect_table_set(query: TaggedQuery, schema: Schema) -> list[str]:
    """Tables referenced by the tags, in first-occurrence order."""
    tables = []
    for type_tag, schema_tag in zip(query.type_tags, query.schema_tags):
        if type_tag in TABLE_TAGS:
            table = schema_tag
        elif type_tag in (TypeTag.ATTR, TypeTag.ATTRREF, TypeTag.VALUE):
            table = schema_tag.partition(".")[0]
        else:
            continue
        if not schema.has_table(table):
            raise TranslationError(
                f"tag references unknown table {table!r}", stage="collect_table_set"
            )
        if table not in tables:
            tables.append(table)
    if not tables:
        raise UntranslatableQueryError(
            "no token maps to a table, attribute or value; query is untranslatable"
        )
    return tables


def _path_tables(path) -> set[str]:
    return {node.split(":", 1)[1] for node in path[::2]}


def extract_join_relation(graph: SchemaGraph, table_set: list[str]) -> list[list[str]]:
    """Covering set of shortest join paths over the table set.

    All ordered table pairs are scanned for shortest paths; a path that
    already covers the whole set is returned alone. Otherwise the
    candidate with the fewest missing tables (shorter path breaks ties,
    first hit wins) is kept and patched with shortest paths from its
    first table to each still-missing table.
    """
    ids = [table_id(t) for t in table_set]
    for node_id in ids:
        if node_id not in graph.nodes:
            raise JoinPathError(f"table not in schema graph: {node_id!r}")
    if len(ids) == 1:
        return [[ids[0]]]

    target = set(table_set)
    unreachable = [
        t for t, i in zip(table_set[1:], ids[1:])
        if not find_shortest_paths(graph, ids[0], i)
    ]
    if unreachable:
        raise JoinPathError(
            "no join path connects tables: " + ", ".join(sorted(unreachable))
        )

    candidate = None  # ((missing count, path length), path, missing list)
    for src in ids:
        for dst in ids:
            if src == dst:
                continue
            for path in find_shortest_paths(graph, src, dst):
                covered = _path_tables(path)
                if target <= covered:
                    return [path]
                missing = [t for t in table_set if t not in covered]
                key = (len(missing), len(path))
                if candidate is None or key < candidate[0]:
                    candidate = (key, path, missing)

    _, base_path, missing = candidate
    return_paths = [base_path]
    first_table = base_path[0]
    remaining = list(missing)
    for table in list(remaining):
        if table not in remaining:
            continue
        remaining.remove(table)
        for path in find_shortest_paths(graph, first_table, table_id(table)):
            if path not in return_paths:
                return_paths.append(path)
            covered = _path_tables(path)
            for other in list(remaining):
                if other in covered:
                    remaining.remove(other)
    return return_paths


def derive_join_conditions(graph: SchemaGraph, paths) -> list[JoinCondition]:
    """One equality condition per consecutive (table, attr, table) triple,
    deduplicated across paths in deterministic order."""
    conditions = []
    seen = set()
    for path in paths:
        for pos, node in enumerate(path):
            expected = TABLE_NODE if pos % 2 == 0 else "attr"
            if graph.nodes[node].kind != expected:
                raise TranslationError(
                    f"join path does not alternate table/attribute nodes: {path}"
                )
        for pos in range(0, len(path) - 2, 2):
            left = graph.nodes[path[pos]].label
            attr = graph.nodes[path[pos + 1]].label
            right = graph.nodes[path[pos + 2]].label
            cond = JoinCondition(left, right, attr)
            if cond.key() not in seen:
                seen.add(cond.key())
                conditions.append(cond)
    return conditions


def extract_where_conditions(
    query: TaggedQuery, config: PipelineConfig | None = None
) -> list[WhereCondition]:
    """Merge consecutive identical VALUE mappings into predicates."""
    config = config or PipelineConfig()
    conditions = []
    i, n = 0, len(query)
    while i < n:
        if query.type_tags[i] is not TypeTag.VALUE:
            i += 1
            continue
        tag = query.schema_tags[i]
        j = i
        while (
            j + 1 < n
            and query.type_tags[j + 1] is TypeTag.VALUE
            and query.schema_tags[j + 1] == tag
        ):
            j += 1
        literal = " ".join(query.tokens[i : j + 1])
        operator = "="
        if config.cond_operators:
            operator = _adjacent_operator(query, i, j) or "="
        conditions.append(WhereCondition(tag, operator, literal, (i, j)))
        i = j + 1
    return conditions


def _adjacent_operator(query, start, end):
    for idx in (start - 1, end + 1):
        if 0 <= idx < len(query) and query.type_tags[idx] is TypeTag.COND:
            op = COND_OPERATORS.get(query.tokens[idx].lower())
            if op:
                return op
    return None


def extract_aggregate_clause(
    query: TaggedQuery,
    prev_window: int = 3,
    config: PipelineConfig | None = None,
) -> AggregateClause | None:
    """Windowed keyword search for SUM/COUNT/AVG before a relation token."""
    if prev_window < 1:
        raise TranslationError("prev_window must be >= 1")
    config = config or PipelineConfig()
    lexicons = (
        ("SUM", {w.lower() for w in config.sum_keywords}),
        ("COUNT", {w.lower() for w in config.count_keywords}),
        ("AVG", {w.lower() for w in config.avg_keywords}),
    )
    for i, type_tag in enumerate(query.type_tags):
        if type_tag not in RELATION_TAGS:
            continue
        for j in range(max(0, i - prev_window), i):
            word = query.tokens[j].lower()
            for func, lexicon in lexicons:
                if word in lexicon:
                    return AggregateClause(
                        func=func,
                        anchor_token=query.tokens[i],
                        anchor_type=type_tag,
                        anchor_schema=query.schema_tags[i],
                        keyword=query.tokens[j],
                        keyword_index=j,
                        anchor_index=i,
                    )
    return None


def _table_provenance(table, query, table_set):
    """First tag-based reason for a table in T."""
    for i, (type_tag, schema_tag) in enumerate(
        zip(query.type_tags, query.schema_tags)
    ):
        if type_tag in TABLE_TAGS and schema_tag == table:
            return Provenance(
                part=table,
                kind="mapped-from-token",
                reason=(
                    f"mapped from token '{query.tokens[i]}' "
                    f"tagged {type_tag.value}"
                ),
            )
    for i, (type_tag, schema_tag) in enumerate(
        zip(query.type_tags, query.schema_tags)
    ):
        if (
            type_tag in (TypeTag.ATTR, TypeTag.ATTRREF, TypeTag.VALUE)
            and schema_tag.partition(".")[0] == table
        ):
            return Provenance(
                part=table,
                kind="table-of-mapped-attribute",
                reason=(
                    f"table of mapped attribute '{schema_tag}' "
                    f"from token '{query.tokens[i]}'"
                ),
            )
    return None


def _intermediate_provenance(table, plan: JoinPlan, graph):
    for path in plan.paths:
        labels = [graph.nodes[n].label for n in path[::2]]
        if table in labels[1:-1]:
            return Provenance(
                part=table,
                kind="required-intermediate-for-join",
                reason=(
                    f"required table to connect '{labels[0]}' and "
                    f"'{labels[-1]}' through join"
                ),
            )
    return Provenance(
        part=table,
        kind="required-intermediate-for-join",
        reason="required table to complete the join path",
    )


def assemble_sql(
    schema: Schema,
    table_set: list[str],
    plan: JoinPlan,
    wheres: list[WhereCondition],
    agg: AggregateClause | None,
    query: TaggedQuery,
) -> SqlQuery:
    """Compose the final structured query with full provenance."""
    from_tables = plan.path_tables()
    for table in table_set:
        if table not in from_tables:
            from_tables.append(table)
    for cond in plan.conditions:
        for table in (cond.left_table, cond.right_table):
            if table not in from_tables:
                raise TranslationError(
                    f"join condition names table outside FROM: {table!r}"
                )
    for where in wheres:
        if where.column.partition(".")[0] not in from_tables:
            raise TranslationError(
                f"value predicate names table outside FROM: {where.column!r}"
            )

    if agg is None:
        select = "*"
    elif agg.anchor_type in TABLE_TAGS:
        select = f"{agg.func}(*)"
    else:
        select = f"{agg.func}({agg.anchor_schema})"

    provenance = []
    for table in from_tables:
        record = None
        if table in table_set:
            record = _table_provenance(table, query, table_set)
        if record is None:
            record = _intermediate_provenance(table, plan, _GraphView(plan))
        provenance.append(record)
    for cond in plan.conditions:
        provenance.append(
            Provenance(
                part=cond.render(),
                kind="join-condition",
                reason=(
                    f"join condition connecting '{cond.left_table}' and "
                    f"'{cond.right_table}' through attribute '{cond.attribute}'"
                ),
            )
        )
    for where in wheres:
        start, end = where.token_span
        provenance.append(
            Provenance(
                part=where.render(),
                kind="value-detected",
                reason=(
                    f"value '{where.literal}' detected for column "
                    f"'{where.column}' (tokens {start}-{end})"
                ),
            )
        )
    if agg is not None:
        provenance.append(
            Provenance(
                part=select,
                kind="keyword-detected",
                reason=(
                    f"aggregate keyword '{agg.keyword}' found within "
                    f"{agg.anchor_index - agg.keyword_index} tokens before "
                    f"'{agg.anchor_token}'"
                ),
            )
        )

    return SqlQuery(
        select=select,
        from_tables=from_tables,
        joins=list(plan.conditions),
        values=list(wheres),
        aggregate=agg,
        provenance=provenance,
        join_path_nodes=plan.node_ids(),
        join_path_edges=plan.edge_ids(),
    )


class _GraphView:
    """Label lookup over plan paths without needing the full graph."""

    def __init__(self, plan):
        self.nodes = {
            node: type("N", (), {"label": node.split(":", 1)[1]})()
            for path in plan.paths
            for node in path
        }


def render_sql(q: SqlQuery) -> str:
    parts = [f"SELECT {q.select}", "FROM " + ", ".join(q.from_tables)]
    conjuncts = [f"({c.render()})" for c in q.joins]
    conjuncts += [f"({w.render()})" for w in q.values]
    if conjuncts:
        parts.append("WHERE " + " AND ".join(conjuncts))
    return " ".join(parts)


def explain_sql(q: SqlQuery) -> list[dict[str, str]]:
    if len(q.provenance) != len(q.from_tables) + len(q.joins) + len(q.values) + (
        1 if q.aggregate else 0
    ):
        raise TranslationError("provenance records do not cover every SQL part")
    return [{"part": p.part, "reason": p.reason} for p in q.provenance]


def build_join_plan(graph: SchemaGraph, table_set: list[str]) -> JoinPlan:
    paths = extract_join_relation(graph, table_set)
    conditions = derive_join_conditions(graph, paths)
    plan = JoinPlan(paths=paths, conditions=conditions, intermediate_tables=[])
    plan.intermediate_tables = [
        t for t in plan.path_tables() if t not in table_set
    ]
    return plan


def translate_tagged_query(
    schema: Schema,
    graph: SchemaGraph,
    query: TaggedQuery,
    config: PipelineConfig | None = None,
) -> SqlQuery:
    """Full translation of an already-tagged query."""
    config = config or PipelineConfig()
    table_set = collect_table_set(query, schema)
    plan = build_join_plan(graph, table_set)
    wheres = extract_where_conditions(query, config)
    agg = extract_aggregate_clause(query, config.prev_window, config)
    return assemble_sql(schema, table_set, plan, wheres, agg, query)
