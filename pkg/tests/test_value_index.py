import pytest

from nlidb.errors import CorpusError
from nlidb.tags import TypeTag
from nlidb.tokenizer import PLACEHOLDER
from nlidb.value_index import (
    ValueIndex,
    build_value_index,
    load_value_corpus,
    map_values_tfidf,
)


def build(rows):
    return build_value_index(rows)


def test_ngrams_up_to_three_words():
    index = build([("t", "c", "alpha beta gamma delta")])
    for key in ("alpha", "alpha beta", "alpha beta gamma", "beta gamma delta"):
        assert key in index.postings
    assert "alpha beta gamma delta" not in index.postings


def test_lookup_is_case_insensitive_and_placeholder_safe():
    index = build([("t", "c", "House of Cards")])
    assert index.lookup(["HOUSE", "OF", "CARDS"])
    assert index.lookup([PLACEHOLDER]) == []
    assert index.lookup(["house", PLACEHOLDER, "cards"]) == []


def test_biggest_tf_wins():
    rows = [("a", "x", "netflix")] * 5 + [("b", "y", "netflix")] * 2
    index = build(rows)
    tagged = map_values_tfidf(index, ["netflix"])
    assert tagged.type_tags[0] is TypeTag.VALUE
    assert tagged.schema_tags[0] == "a.x"
    assert tagged.distributions[0] == {"a.x": 5 / 7, "b.y": 2 / 7}


def test_longest_ngram_suppresses_subgrams():
    index = build([("t", "c", "House of Cards"), ("t", "d", "House")])
    tagged = map_values_tfidf(index, ["House", "of", "Cards"])
    # The 3-gram match claims all three tokens; the 1-gram "House" hit
    # in column d must not override the first token.
    assert tagged.schema_tags == ["t.c", "t.c", "t.c"]


def test_spans_do_not_overlap():
    index = build([("t", "c", "red desert"), ("t", "d", "desert storm")])
    tagged = map_values_tfidf(index, ["red", "desert", "storm"])
    assert tagged.schema_tags[0] == "t.c"
    assert tagged.schema_tags[1] == "t.c"
    assert tagged.schema_tags[2] == "t.d"  # 1-gram "storm" still matches


def test_unmatched_tokens_stay_other():
    index = build([("t", "c", "netflix")])
    tagged = map_values_tfidf(index, ["who", "is"])
    assert tagged.type_tags == [TypeTag.O, TypeTag.O]


def test_corpus_loader_validates_format():
    assert load_value_corpus("") == []
    rows = load_value_corpus("table\tcolumn\tvalue\na\tb\tc\n\n")
    assert rows == [("a", "b", "c")]
    with pytest.raises(CorpusError, match="must start"):
        load_value_corpus("bad header")
    with pytest.raises(CorpusError, match="row 2"):
        load_value_corpus("table\tcolumn\tvalue\nonly-one-field")


def test_stats(movie_bundle):
    stats = movie_bundle.index.stats()
    assert stats["columns"] == 4  # title, release_year, name, full_name
    assert stats["ngrams"] == len(movie_bundle.index)
    assert stats["postings"] >= stats["ngrams"]
