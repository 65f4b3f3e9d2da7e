"""Workspace loading: schema + graph + index + optional extras per db.

A workspace directory holds one subdirectory per database::

    <workspace>/<db>/schema.json      required
    <workspace>/<db>/values.tsv       required
    <workspace>/<db>/embeddings.txt   optional
    <workspace>/<db>/corpus.tags      optional
    <workspace>/<db>/config.toml      optional

The packaged ``movie`` workspace ships with the library.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .compose import CompositeTagger
from .config import PipelineConfig, load_config
from .embeddings import EmbeddingStore, load_embeddings
from .errors import WorkspaceError
from .gold import GoldQuery, load_gold_tags
from .graph import SchemaGraph, extract_graph
from .schema import Schema, load_schema_file
from .value_index import ValueIndex, build_value_index, load_value_corpus

ENV_WORKSPACE = "NLIDB_WORKSPACE"


@dataclass
class WorkspaceBundle:
    name: str
    schema: Schema
    graph: SchemaGraph
    index: ValueIndex
    config: PipelineConfig
    store: EmbeddingStore | None = None
    gold: list[GoldQuery] = field(default_factory=list)

    def tagger(self) -> CompositeTagger:
        return CompositeTagger(self.schema, self.index, self.config, self.store)

    def find_gold(self, tokens) -> GoldQuery | None:
        for entry in self.gold:
            if entry.tagged.tokens == list(tokens):
                return entry
        return None


def bundled_data_dir() -> Path:
    return Path(resources.files("nlidb") / "data")


def resolve_workspace(workspace: str | os.PathLike | None) -> Path:
    """CLI --workspace, else NLIDB_WORKSPACE, else the bundled data."""
    if workspace:
        return Path(workspace)
    env = os.environ.get(ENV_WORKSPACE)
    if env:
        return Path(env)
    return bundled_data_dir()


def list_databases(workspace: str | os.PathLike | None = None) -> list[str]:
    root = resolve_workspace(workspace)
    if not root.is_dir():
        return []
    return sorted(
        entry.name
        for entry in root.iterdir()
        if entry.is_dir() and (entry / "schema.json").is_file()
    )


def load_workspace(db: str, workspace: str | os.PathLike | None = None) -> WorkspaceBundle:
    root = resolve_workspace(workspace) / db
    schema_path = root / "schema.json"
    if not schema_path.is_file():
        raise WorkspaceError(f"unknown database {db!r}: missing {schema_path}")
    schema = load_schema_file(schema_path)
    graph = extract_graph(schema)

    values_path = root / "values.tsv"
    if not values_path.is_file():
        raise WorkspaceError(f"workspace for {db!r} is missing values.tsv")
    index = build_value_index(
        load_value_corpus(values_path.read_text(encoding="utf-8"))
    )

    config_path = root / "config.toml"
    config = (
        load_config(config_path.read_text(encoding="utf-8"))
        if config_path.is_file()
        else PipelineConfig()
    )

    store = None
    embeddings_path = root / "embeddings.txt"
    if embeddings_path.is_file():
        store = load_embeddings(embeddings_path.read_text(encoding="utf-8"))

    gold: list[GoldQuery] = []
    corpus_path = root / "corpus.tags"
    if corpus_path.is_file():
        gold = load_gold_tags(corpus_path.read_text(encoding="utf-8"), schema)

    return WorkspaceBundle(
        name=db,
        schema=schema,
        graph=graph,
        index=index,
        config=config,
        store=store,
        gold=gold,
    )
