"""Dense word vectors and cosine-similarity keyword matching.

Embedding files use the word2vec text format: a "<count> <dim>" header
line followed by "word v1 ... v<dim>" lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CorpusError
from .schema import Schema
from .tags import TaggedQuery, TypeTag, all_other, point_mass
from .tokenizer import PLACEHOLDER, token_texts
from .value_index import ValueIndex


@dataclass
class EmbeddingStore:
    dim: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim <= 0:
            raise CorpusError("embedding dimension must be positive")

    def add(self, word: str, vector):
        vec = np.asarray(vector, dtype=float)
        if vec.shape != (self.dim,):
            raise CorpusError(
                f"vector for {word!r} has length {vec.shape}, expected {self.dim}"
            )
        self.vectors[word.lower()] = vec

    def get(self, word: str) -> np.ndarray | None:
        return self.vectors.get(word.lower())

    def phrase_vector(self, words) -> np.ndarray | None:
        """Mean of the in-vocabulary word vectors; None when all OOV."""
        vecs = [v for v in (self.get(w) for w in words) if v is not None]
        if not vecs:
            return None
        return np.mean(vecs, axis=0)


def load_embeddings(text: str) -> EmbeddingStore:
    lines = text.splitlines()
    if not lines:
        raise CorpusError("empty embedding file")
    header = lines[0].split()
    if len(header) != 2:
        raise CorpusError("embedding header must be '<count> <dim>'")
    count, dim = int(header[0]), int(header[1])
    store = EmbeddingStore(dim=dim)
    for line in lines[1 : count + 1]:
        parts = line.rstrip().split(" ")
        if len(parts) != dim + 1:
            raise CorpusError(f"bad embedding row for {parts[0]!r}")
        store.add(parts[0], [float(x) for x in parts[1:]])
    return store


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def map_with_embeddings(
    store: EmbeddingStore,
    schema: Schema,
    index: ValueIndex,
    tokens,
    threshold: float = 0.6,
) -> TaggedQuery:
    """Tag tokens by cosine similarity to schema names and value phrases.

    Out-of-vocabulary tokens stay O. The highest similarity at or above
    ``threshold`` wins; ties break lexicographically by schema tag.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    candidates = []  # (vector, type tag, schema tag)
    for table in schema.tables:
        vec = store.get(table.name)
        if vec is not None:
            candidates.append((vec, TypeTag.TABLE, table.name))
    for table, col in schema.non_key_columns():
        vec = store.get(col)
        if vec is not None:
            candidates.append((vec, TypeTag.ATTR, f"{table}.{col}"))
    seen_values = set()
    for gram, postings in index.postings.items():
        if gram in seen_values:
            continue
        seen_values.add(gram)
        vec = store.phrase_vector(gram.split())
        if vec is not None:
            candidates.append((vec, TypeTag.VALUE, postings[0].column_ref))

    texts = token_texts(tokens)
    result = all_other(texts)
    for i, text in enumerate(texts):
        if text == PLACEHOLDER:
            continue
        vec = store.get(text)
        if vec is None:
            continue
        best = None  # ((-sim, schema_tag), type_tag)
        for cand_vec, type_tag, schema_tag in candidates:
            sim = cosine(vec, cand_vec)
            if sim < threshold:
                continue
            key = (-sim, schema_tag)
            if best is None or key < best[0]:
                best = (key, type_tag)
        if best is not None:
            (_, schema_tag), type_tag = best
            result.type_tags[i] = type_tag
            result.schema_tags[i] = schema_tag
            result.distributions[i] = point_mass(schema_tag)
    return result
