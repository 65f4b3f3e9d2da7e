from nlidb.tokenizer import Token, preprocess_and_tokenize, token_texts


def test_punctuation_stripped_and_case_preserved():
    tokens = preprocess_and_tokenize(
        "Who is the director of the series House of Cards produced by Netflix?"
    )
    assert token_texts(tokens) == [
        "Who", "is", "the", "director", "of", "the", "series",
        "House", "of", "Cards", "produced", "by", "Netflix",
    ]


def test_offsets_point_at_first_surviving_character():
    tokens = preprocess_and_tokenize("'Hi', there!")
    assert tokens == [Token("Hi", 1), Token("there", 6)]


def test_interior_punctuation_is_removed():
    assert token_texts(preprocess_and_tokenize("it's (fine)")) == ["its", "fine"]


def test_empty_and_all_punctuation_inputs():
    assert preprocess_and_tokenize("") == []
    assert preprocess_and_tokenize(" ?!.,  ") == []


def test_whitespace_runs_collapse():
    assert token_texts(preprocess_and_tokenize("a\t b \n c")) == ["a", "b", "c"]
