"""Perturbation-based per-token explanations of a tagger's decisions.

A black box maps a token list to per-token probability distributions
over schema tags. To explain one token's predicted tag we perturb the
query by masking tokens in place (positions are preserved, so the
explained index keeps addressing the same token), read the target-tag
probability at that position, and fit a weighted ridge surrogate over
the presence masks. The fitted coefficients are the signed per-token
contribution scores.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import ExplainConfig
from .errors import ExplainError
from .tags import TaggedQuery, TypeTag
from .tokenizer import PLACEHOLDER

EXHAUSTIVE_LIMIT = 16


@dataclass
class Explanation:
    token_index: int
    target_tag: str
    contributions: list[tuple[int, float]]
    intercept: float
    samples: int
    seed: int
    status: str = "ok"  # "ok" | "degenerate"

    def to_dict(self, tokens=None):
        return {
            "token_index": self.token_index,
            "target_tag": self.target_tag,
            "contributions": [
                {
                    "index": i,
                    "token": tokens[i] if tokens is not None else None,
                    "score": score,
                }
                for i, score in self.contributions
            ],
            "intercept": self.intercept,
            "samples": self.samples,
            "seed": self.seed,
            "status": self.status,
        }


def generate_perturbations(
    n: int, samples: int = 1000, seed: int = 0, mode: str = "sampled"
) -> np.ndarray:
    """Binary presence masks, shape (count, n); 0 marks a masked token.

    Sampled mode draws a removal count uniformly in [0, n-1] and then a
    uniform subset, always emitting the all-ones mask first. Exhaustive
    mode enumerates all 2**n masks.
    """
    if n < 1:
        raise ExplainError("token count must be >= 1")
    if mode == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise ExplainError(
                f"exhaustive mode is limited to {EXHAUSTIVE_LIMIT} tokens"
            )
        masks = np.zeros((2**n, n), dtype=int)
        for row in range(2**n):
            for bit in range(n):
                masks[row, bit] = (row >> bit) & 1
        return masks
    if mode != "sampled":
        raise ExplainError(f"unknown perturbation mode: {mode!r}")
    if samples < 1:
        raise ExplainError("samples must be >= 1 in sampled mode")
    rng = np.random.default_rng(seed)
    masks = np.ones((samples, n), dtype=int)
    for row in range(1, samples):
        removals = int(rng.integers(0, n))
        if removals:
            drop = rng.choice(n, size=removals, replace=False)
            masks[row, drop] = 0
    return masks


def _fit_surrogate(masks, targets, weights, ridge):
    """Weighted ridge regression with an unpenalized intercept."""
    m, n = masks.shape
    design = np.hstack([np.ones((m, 1)), masks.astype(float)])
    w = np.asarray(weights, dtype=float)
    gram = design.T @ (design * w[:, None])
    rhs = design.T @ (w * targets)
    penalty = np.diag([0.0] + [ridge] * n)
    try:
        beta = np.linalg.solve(gram + penalty, rhs)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(beta)):
        return None
    return beta


def explain_token(
    bb,
    query: TaggedQuery,
    token_index: int,
    config: ExplainConfig | None = None,
    allow_other: bool = False,
) -> Explanation:
    """Explain why the black box assigns ``query``'s tag at one position."""
    config = config or ExplainConfig()
    n = len(query)
    if not 0 <= token_index < n:
        raise ExplainError(f"token index {token_index} out of range")
    if query.type_tags[token_index] is TypeTag.O and not allow_other:
        raise ExplainError(
            f"token {token_index} is tagged O and not selected for explanation"
        )
    target_tag = query.schema_tags[token_index]
    masks = generate_perturbations(n, config.samples, config.seed, config.mode)

    targets = np.empty(len(masks))
    for row, mask in enumerate(masks):
        perturbed = [
            tok if keep else PLACEHOLDER
            for tok, keep in zip(query.tokens, mask)
        ]
        dists = bb(perturbed)
        if len(dists) != n:
            raise ExplainError(
                f"black box returned {len(dists)} distributions for {n} tokens"
            )
        targets[row] = dists[token_index].get(target_tag, 0.0)

    masked_fraction = 1.0 - masks.sum(axis=1) / n
    weights = np.exp(-(masked_fraction**2) / config.kernel_width**2)

    beta = _fit_surrogate(masks, targets, weights, config.ridge)
    if beta is None:
        return Explanation(
            token_index=token_index,
            target_tag=target_tag,
            contributions=[(i, 0.0) for i in range(n)],
            intercept=0.0,
            samples=len(masks),
            seed=config.seed,
            status="degenerate",
        )
    return Explanation(
        token_index=token_index,
        target_tag=target_tag,
        contributions=[(i, float(beta[i + 1])) for i in range(n)],
        intercept=float(beta[0]),
        samples=len(masks),
        seed=config.seed,
        status="ok",
    )


def explain_query(
    bb, query: TaggedQuery, config: ExplainConfig | None = None
) -> list[Explanation]:
    """One explanation per non-O token, in token order.

    Per-token seeds are derived as seed ^ index so batches reproduce.
    """
    from dataclasses import replace

    config = config or ExplainConfig()
    out = []
    for i, type_tag in enumerate(query.type_tags):
        if type_tag is TypeTag.O:
            continue
        token_config = replace(config, seed=config.seed ^ i)
        out.append(explain_token(bb, query, i, token_config))
    return out
