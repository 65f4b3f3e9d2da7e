"""Bipartite schema graph: construction, all-shortest-paths, exports.

Tables and attributes become nodes; an edge marks a has-A relation.
Same-named columns share one attribute node, which is what encodes
joinability between tables whose key columns carry the same name.
Foreign keys whose endpoints are named differently get an extra edge
from the referenced column's attribute node to the referencing table.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import GraphError
from .schema import Schema

TABLE_NODE = "table"
ATTR_NODE = "attr"


def table_id(name: str) -> str:
    return f"table:{name}"


def attr_id(label: str) -> str:
    return f"attr:{label}"


@dataclass(frozen=True)
class GraphNode:
    id: str
    kind: str
    label: str


@dataclass
class SchemaGraph:
    nodes: dict[str, GraphNode] = field(default_factory=dict)
    _adj: dict[str, set[str]] = field(default_factory=dict)

    def add_node(self, node: GraphNode):
        if node.id not in self.nodes:
            self.nodes[node.id] = node
            self._adj[node.id] = set()

    def add_edge(self, a: str, b: str):
        if a not in self.nodes or b not in self.nodes:
            raise GraphError(f"edge endpoint not in graph: {a!r}-{b!r}")
        if a == b:
            raise GraphError(f"self-loop on {a!r}")
        if self.nodes[a].kind == self.nodes[b].kind:
            raise GraphError(
                f"edge must join a table node and an attribute node: {a!r}-{b!r}"
            )
        self._adj[a].add(b)
        self._adj[b].add(a)

    def has_edge(self, a: str, b: str) -> bool:
        return b in self._adj.get(a, ())

    def neighbors(self, node_id: str) -> list[str]:
        """Neighbors in deterministic (label, id) order."""
        return sorted(self._adj[node_id], key=lambda n: (self.nodes[n].label, n))

    def edges(self) -> list[tuple[str, str]]:
        """Undirected edge list, each as a sorted id pair, deterministic."""
        out = set()
        for a, nbrs in self._adj.items():
            for b in nbrs:
                out.add(tuple(sorted((a, b))))
        return sorted(out)

    def table_nodes(self) -> list[GraphNode]:
        return sorted(
            (n for n in self.nodes.values() if n.kind == TABLE_NODE),
            key=lambda n: n.label,
        )

    def labels(self, node_ids) -> list[str]:
        return [self.nodes[i].label for i in node_ids]


def extract_graph(schema: Schema) -> SchemaGraph:
    """Build the bipartite table/attribute graph for a schema."""
    graph = SchemaGraph()
    for table in schema.tables:
        graph.add_node(GraphNode(table_id(table.name), TABLE_NODE, table.name))
        for col in table.columns:
            aid = attr_id(col.name)
            if aid not in graph.nodes:
                graph.add_node(GraphNode(aid, ATTR_NODE, col.name))
            graph.add_edge(table_id(table.name), aid)
    # Relaxation for foreign keys whose column names differ from the
    # referenced primary key: connect the referenced attribute to the
    # referencing table so the join is representable.
    for fk in schema.foreign_keys:
        if fk.column != fk.ref_column:
            graph.add_edge(attr_id(fk.ref_column), table_id(fk.table))
    return graph


def find_shortest_paths(graph: SchemaGraph, src: str, dst: str) -> list[list[str]]:
    """All minimum-length paths between two table nodes.

    Returns paths as node-id lists ordered lexicographically by their
    label sequences; empty list when the endpoints are disconnected.
    """
    for node_id in (src, dst):
        if node_id not in graph.nodes:
            raise GraphError(f"unknown node id: {node_id!r}")
        if graph.nodes[node_id].kind != TABLE_NODE:
            raise GraphError(f"not a table node: {node_id!r}")
    if src == dst:
        return [[src]]

    dist = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nxt in graph.neighbors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    if dst not in dist:
        return []

    # Walk the predecessor DAG backwards from dst, expanding every
    # minimum-length path.
    paths = []

    def expand(node, suffix):
        if node == src:
            paths.append([src] + suffix)
            return
        for prev in graph.neighbors(node):
            if dist.get(prev) == dist[node] - 1:
                expand(prev, [node] + suffix)

    expand(dst, [])
    paths.sort(key=lambda p: tuple(graph.labels(p)))
    return paths


def bfs_distance(graph: SchemaGraph, src: str, dst: str) -> int | None:
    """Hop count between two nodes, or None when disconnected."""
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nxt in graph.neighbors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                if nxt == dst:
                    return dist[nxt]
                queue.append(nxt)
    return None


def _check_highlight(graph, highlight_nodes, highlight_edges):
    nodes = set(highlight_nodes or ())
    edges = {tuple(sorted(e)) for e in (highlight_edges or ())}
    for node_id in nodes:
        if node_id not in graph.nodes:
            raise GraphError(f"highlight references unknown node: {node_id!r}")
    known = set(graph.edges())
    for edge in edges:
        if edge not in known:
            raise GraphError(f"highlight references unknown edge: {edge!r}")
    return nodes, edges


def export_json(graph: SchemaGraph, highlight_nodes=(), highlight_edges=()) -> str:
    """Graph JSON wire shape; highlighted elements carry highlight=true."""
    nodes, edges = _check_highlight(graph, highlight_nodes, highlight_edges)
    payload = {
        "nodes": [
            {
                "id": node.id,
                "kind": node.kind,
                "label": node.label,
                "highlight": node.id in nodes,
            }
            for node in sorted(graph.nodes.values(), key=lambda n: n.id)
        ],
        "edges": [
            {"a": a, "b": b, "highlight": (a, b) in edges}
            for a, b in graph.edges()
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def export_dot(graph: SchemaGraph, highlight_nodes=(), highlight_edges=()) -> str:
    """Graphviz DOT text: boxes for tables, ellipses for attributes."""
    nodes, edges = _check_highlight(graph, highlight_nodes, highlight_edges)
    lines = ["graph schema {"]
    for node in sorted(graph.nodes.values(), key=lambda n: n.id):
        shape = "box" if node.kind == TABLE_NODE else "ellipse"
        attrs = [f'label="{node.label}"', f"shape={shape}"]
        if node.id in nodes:
            attrs.append('color="blue"')
        lines.append(f'  "{node.id}" [{", ".join(attrs)}];')
    for a, b in graph.edges():
        attrs = ' [color="blue"]' if (a, b) in edges else ""
        lines.append(f'  "{a}" -- "{b}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph_json(text: str) -> SchemaGraph:
    """Rebuild a SchemaGraph from its JSON export (round-trip helper)."""
    raw = json.loads(text)
    graph = SchemaGraph()
    for node in raw["nodes"]:
        graph.add_node(GraphNode(node["id"], node["kind"], node["label"]))
    for edge in raw["edges"]:
        graph.add_edge(edge["a"], edge["b"])
    return graph
