import pytest

from nlidb.lexical import levenshtein, map_relations_lexical, similarity
from nlidb.tags import TypeTag
from nlidb.tokenizer import PLACEHOLDER


def test_levenshtein_hand_values():
    assert levenshtein("", "") == 0
    assert levenshtein("abc", "") == 3
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("director", "directr") == 1
    assert levenshtein("flaw", "lawn") == 2


def test_similarity_normalization():
    assert similarity("director", "director") == 1.0
    assert similarity("DIRECTOR", "director") == 1.0  # case-insensitive
    assert similarity("directr", "director") == pytest.approx(7 / 8)
    assert similarity("", "") == 1.0
    assert similarity("a", "") == 0.0


def test_exact_table_name_maps_to_table(movie_schema):
    tagged = map_relations_lexical(movie_schema, ["director", "company"])
    assert tagged.type_tags == [TypeTag.TABLE, TypeTag.TABLE]
    assert tagged.schema_tags == ["director", "company"]


def test_fuzzy_match_above_threshold(movie_schema):
    tagged = map_relations_lexical(movie_schema, ["directr"], threshold=0.8)
    assert tagged.schema_tags == ["director"]  # 7/8 = 0.875 >= 0.8


def test_below_threshold_stays_other(movie_schema):
    tagged = map_relations_lexical(movie_schema, ["directr"], threshold=0.9)
    assert tagged.type_tags == [TypeTag.O]


def test_non_key_column_maps_to_attr(movie_schema):
    tagged = map_relations_lexical(movie_schema, ["title"])
    assert tagged.type_tags == [TypeTag.ATTR]
    assert tagged.schema_tags == ["tv_series.title"]


def test_key_columns_are_not_candidates(movie_schema):
    tagged = map_relations_lexical(movie_schema, ["msid"])
    assert tagged.type_tags == [TypeTag.O]


def test_tie_breaks_lexicographically():
    from nlidb.schema import Column, Schema, Table

    schema = Schema(
        "x", (Table("beta", (Column("c1"),)), Table("alfa", (Column("c2"),)))
    )
    # "bet" and "alf" are equally far from nothing useful; pick a token
    # equidistant from both table names: similarity("abcd","beta") vs "alfa".
    tagged = map_relations_lexical(schema, ["alfabeta"], threshold=0.0)
    # Equal similarity to both names resolves to the smaller tag.
    from nlidb.lexical import similarity

    assert similarity("alfabeta", "alfa") == similarity("alfabeta", "beta")
    assert tagged.schema_tags == ["alfa"]


def test_placeholder_never_matches(movie_schema):
    tagged = map_relations_lexical(movie_schema, [PLACEHOLDER], threshold=0.0)
    assert tagged.type_tags == [TypeTag.O]


def test_threshold_validation(movie_schema):
    with pytest.raises(ValueError):
        map_relations_lexical(movie_schema, ["x"], threshold=1.5)
