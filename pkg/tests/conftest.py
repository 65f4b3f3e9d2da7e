import random

import pytest

from nlidb.schema import Column, Schema, Table
from nlidb.graph import extract_graph
from nlidb.workspace import load_workspace


@pytest.fixture(scope="session")
def movie_bundle():
    return load_workspace("movie")


@pytest.fixture(scope="session")
def movie_schema(movie_bundle):
    return movie_bundle.schema


@pytest.fixture(scope="session")
def movie_graph(movie_bundle):
    return movie_bundle.graph


def make_connected_schema(rng: random.Random, max_tables: int = 10) -> Schema:
    """Random schema whose same-named key columns form a connected graph.

    A spanning tree over the tables decides which key names are shared;
    extra shared keys and unique filler columns are sprinkled on top.
    """
    n_tables = rng.randint(2, max_tables)
    columns: dict[int, dict[str, Column]] = {i: {} for i in range(n_tables)}
    for i in range(1, n_tables):
        j = rng.randrange(i)
        key = f"key_{min(i, j)}_{max(i, j)}"
        columns[i][key] = Column(key, "integer")
        columns[j][key] = Column(key, "integer")
    for _ in range(rng.randint(0, n_tables)):
        i, j = rng.randrange(n_tables), rng.randrange(n_tables)
        if i == j:
            continue
        key = f"key_{min(i, j)}_{max(i, j)}"
        columns[i][key] = Column(key, "integer")
        columns[j][key] = Column(key, "integer")
    for i in range(n_tables):
        for c in range(rng.randint(0, 2)):
            name = f"t{i}_field{c}"
            columns[i][name] = Column(name, "text")
    tables = tuple(
        Table(f"t{i}", tuple(columns[i].values())) for i in range(n_tables)
    )
    return Schema(name="random", tables=tables)


def make_unique_column_schema(rng: random.Random, max_tables: int = 10) -> Schema:
    """Random schema with globally unique column names and no foreign keys."""
    n_tables = rng.randint(1, max_tables)
    tables = []
    serial = 0
    for i in range(n_tables):
        cols = []
        for _ in range(rng.randint(1, 4)):
            cols.append(Column(f"col{serial}", "text"))
            serial += 1
        tables.append(Table(f"t{i}", tuple(cols)))
    return Schema(name="random", tables=tuple(tables))


def enumerate_simple_paths(graph, src, dst):
    """All simple paths between two nodes, by depth-first search."""
    paths = []

    def walk(node, seen, acc):
        if node == dst:
            paths.append(acc + [node])
            return
        for nxt in graph.neighbors(node):
            if nxt not in seen:
                walk(nxt, seen | {nxt}, acc + [node])

    walk(src, {src}, [])
    return paths


def brute_force_shortest_paths(graph, src, dst):
    """Oracle for find_shortest_paths: exhaustive enumeration + filter."""
    if src == dst:
        return [[src]]
    paths = enumerate_simple_paths(graph, src, dst)
    if not paths:
        return []
    best = min(len(p) for p in paths)
    shortest = [p for p in paths if len(p) == best]
    shortest.sort(key=lambda p: tuple(graph.labels(p)))
    return shortest


def graph_for(schema: Schema):
    return extract_graph(schema)
