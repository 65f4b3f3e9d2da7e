"""Layered tag composition and the probability-bearing tagger interface.

The composite mapper emulates the output surface of a trained joint
tagger: several partial taggings are merged by priority (gold, then
exact value hits, then fuzzy relation matches, then embeddings), and
COND lexicon words fill in what is left.
"""

from __future__ import annotations

from .config import PipelineConfig
from .errors import TagError
from .lexical import map_relations_lexical
from .tags import TaggedQuery, TypeTag, all_other, point_mass
from .tokenizer import token_texts
from .value_index import map_values_tfidf


def compose_tag_sequence(layers, cond_lexicon=()) -> TaggedQuery:
    """Merge partial TaggedQuery layers; earlier layers win per token.

    Tokens left O whose lowercased text is in ``cond_lexicon`` become
    COND/COND.
    """
    if not layers:
        raise TagError("at least one layer is required")
    tokens = layers[0].tokens
    for layer in layers[1:]:
        if layer.tokens != tokens:
            raise TagError("all layers must share the same token list")
    result = all_other(tokens, offsets=layers[0].offsets)
    cond = {w.lower() for w in cond_lexicon}
    for i, token in enumerate(tokens):
        for layer in layers:
            if layer.type_tags[i] is not TypeTag.O:
                result.type_tags[i] = layer.type_tags[i]
                result.schema_tags[i] = layer.schema_tags[i]
                if layer.distributions is not None:
                    result.distributions[i] = dict(layer.distributions[i])
                else:
                    result.distributions[i] = point_mass(layer.schema_tags[i])
                break
        else:
            if token.lower() in cond:
                result.type_tags[i] = TypeTag.COND
                result.schema_tags[i] = "COND"
                result.distributions[i] = point_mass("COND")
    return result


class CompositeTagger:
    """Callable black box: token list -> per-token schema-tag distributions.

    Deterministic and immutable after construction, so safe for
    concurrent calls from the explainer.
    """

    def __init__(self, schema, index, config: PipelineConfig, store=None):
        self.schema = schema
        self.index = index
        self.store = store
        self.config = config

    def tag(self, tokens) -> TaggedQuery:
        texts = token_texts(tokens)
        layers = [
            map_values_tfidf(self.index, texts),
            map_relations_lexical(self.schema, texts, self.config.lexical_threshold),
        ]
        if self.store is not None:
            from .embeddings import map_with_embeddings

            layers.append(
                map_with_embeddings(
                    self.store, self.schema, self.index, texts,
                    self.config.embedding_threshold,
                )
            )
        return compose_tag_sequence(layers, self.config.cond_lexicon)

    def __call__(self, tokens) -> list[dict[str, float]]:
        return self.tag(tokens).distributions


class GoldTagger:
    """Black box replaying a gold tagging; masked positions fall to O."""

    def __init__(self, gold: TaggedQuery):
        self.gold = gold

    def tag(self, tokens) -> TaggedQuery:
        from .tokenizer import PLACEHOLDER

        texts = token_texts(tokens)
        if len(texts) != len(self.gold):
            raise TagError("token count does not match the gold tagging")
        result = all_other(texts)
        for i, text in enumerate(texts):
            if text == PLACEHOLDER:
                continue
            result.type_tags[i] = self.gold.type_tags[i]
            result.schema_tags[i] = self.gold.schema_tags[i]
            result.distributions[i] = point_mass(self.gold.schema_tags[i])
        return result

    def __call__(self, tokens) -> list[dict[str, float]]:
        return self.tag(tokens).distributions
