"""Inverted index over database values and the tf-based value mapper.

The index stores every word n-gram (n <= 3) of every value in the
corpus, keyed by its lowercased form, with term frequencies counted per
column. Query tokens are matched longest-n-gram-first, greedily left to
right; among columns the biggest tf wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CorpusError
from .tags import TaggedQuery, TypeTag, all_other, point_mass
from .tokenizer import PLACEHOLDER, token_texts

MAX_NGRAM = 3


@dataclass(frozen=True)
class Posting:
    table: str
    column: str
    tf: int

    @property
    def column_ref(self) -> str:
        return f"{self.table}.{self.column}"


@dataclass
class ValueIndex:
    postings: dict[str, list[Posting]] = field(default_factory=dict)

    def __len__(self):
        return len(self.postings)

    def stats(self) -> dict:
        """Summary counts for reporting: grams, postings, columns."""
        columns = {
            (p.table, p.column) for ps in self.postings.values() for p in ps
        }
        return {
            "ngrams": len(self.postings),
            "postings": sum(len(ps) for ps in self.postings.values()),
            "columns": len(columns),
        }

    def lookup(self, ngram_words: list[str]) -> list[Posting]:
        if any(w == PLACEHOLDER for w in ngram_words):
            return []
        key = " ".join(w.lower() for w in ngram_words)
        return self.postings.get(key, [])


def _ngrams(words):
    for n in range(1, MAX_NGRAM + 1):
        for i in range(len(words) - n + 1):
            yield " ".join(words[i : i + n])


def build_value_index(rows) -> ValueIndex:
    """Index (table, column, value) triples.

    ``rows`` is an iterable of 3-tuples; see :func:`load_value_corpus`
    for the TSV file format.
    """
    counts: dict[str, dict[tuple[str, str], int]] = {}
    for table, column, value in rows:
        words = [w.lower() for w in value.split() if w]
        for gram in _ngrams(words):
            counts.setdefault(gram, {})
            counts[gram][(table, column)] = counts[gram].get((table, column), 0) + 1
    index = ValueIndex()
    for gram, per_col in counts.items():
        postings = [Posting(t, c, tf) for (t, c), tf in per_col.items()]
        postings.sort(key=lambda p: (-p.tf, p.table, p.column))
        index.postings[gram] = postings
    return index


def load_value_corpus(text: str) -> list[tuple[str, str, str]]:
    """Parse the value-corpus TSV: header 'table\\tcolumn\\tvalue'."""
    rows = []
    lines = text.splitlines()
    if not lines:
        return rows
    if lines[0].strip() != "table\tcolumn\tvalue":
        raise CorpusError("value corpus must start with 'table\\tcolumn\\tvalue'")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise CorpusError(
                f"row {lineno}: expected 3 tab-separated fields, got {len(parts)}"
            )
        rows.append((parts[0], parts[1], parts[2]))
    return rows


def map_values_tfidf(index: ValueIndex, tokens) -> TaggedQuery:
    """Tag VALUE spans by exact n-gram hits against the value index.

    Longer n-grams are matched first and suppress their constituent
    sub-grams; spans never overlap. Column ambiguity is resolved toward
    the biggest tf, with the tf-normalized scores kept as the token's
    probability distribution.
    """
    texts = token_texts(tokens)
    result = all_other(texts)
    n = len(texts)
    taken = [False] * n
    for size in range(MAX_NGRAM, 0, -1):
        for start in range(0, n - size + 1):
            span = range(start, start + size)
            if any(taken[i] for i in span):
                continue
            postings = index.lookup(texts[start : start + size])
            if not postings:
                continue
            winner = postings[0]
            total = sum(p.tf for p in postings)
            dist = {p.column_ref: p.tf / total for p in postings}
            for i in span:
                taken[i] = True
                result.type_tags[i] = TypeTag.VALUE
                result.schema_tags[i] = winner.column_ref
                result.distributions[i] = dict(dist)
    return result
