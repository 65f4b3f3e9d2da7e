"""Query pre-processing and tokenization.

Punctuation characters are stripped, then the remainder is split on
runs of whitespace. Case is preserved; each token remembers the offset
of its first surviving character in the raw text.
"""

from __future__ import annotations

from dataclasses import dataclass

# Stripped before whitespace splitting.
PUNCTUATION = set(",'\"?.!;:()")

# Reserved stand-in used by the explainer to mask a token in place.
# Every mapper treats it as guaranteed-no-match.
PLACEHOLDER = "␀"


@dataclass(frozen=True)
class Token:
    text: str
    offset: int


def preprocess_and_tokenize(raw: str) -> list[Token]:
    tokens = []
    text = []
    offset = -1
    for i, ch in enumerate(raw):
        if ch.isspace():
            if text:
                tokens.append(Token("".join(text), offset))
                text, offset = [], -1
        elif ch in PUNCTUATION:
            continue
        else:
            if not text:
                offset = i
            text.append(ch)
    if text:
        tokens.append(Token("".join(text), offset))
    return tokens


def token_texts(tokens) -> list[str]:
    return [t.text if isinstance(t, Token) else str(t) for t in tokens]
