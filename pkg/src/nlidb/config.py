"""Pipeline configuration: thresholds, lexicons and explainer knobs.

Workspace config files are simple key=value TOML; unknown keys are
rejected so typos fail loudly.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields, replace

from .errors import WorkspaceError

DEFAULT_COND_LEXICON = (
    "more", "than", "least", "most", "after", "before",
    "greater", "less", "fewer", "above", "below",
)
DEFAULT_SUM_KEYWORDS = ("total", "sum")
DEFAULT_COUNT_KEYWORDS = ("many", "count", "number")
DEFAULT_AVG_KEYWORDS = ("average", "avg", "mean")


@dataclass(frozen=True)
class ExplainConfig:
    samples: int = 1000
    seed: int = 0
    kernel_width: float = 0.25
    ridge: float = 1e-3
    mode: str = "sampled"  # "sampled" | "exhaustive"


@dataclass(frozen=True)
class PipelineConfig:
    lexical_threshold: float = 0.8
    embedding_threshold: float = 0.6
    prev_window: int = 3
    cond_operators: bool = False
    cond_lexicon: tuple[str, ...] = DEFAULT_COND_LEXICON
    sum_keywords: tuple[str, ...] = DEFAULT_SUM_KEYWORDS
    count_keywords: tuple[str, ...] = DEFAULT_COUNT_KEYWORDS
    avg_keywords: tuple[str, ...] = DEFAULT_AVG_KEYWORDS
    explain: ExplainConfig = field(default_factory=ExplainConfig)


_EXPLAIN_KEYS = {f.name for f in fields(ExplainConfig)}
_PIPELINE_KEYS = {f.name for f in fields(PipelineConfig)} - {"explain"}


def load_config(text: str) -> PipelineConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise WorkspaceError(f"bad config file: {exc}") from exc
    pipeline_kwargs = {}
    explain_kwargs = {}
    for key, value in raw.items():
        if key in _PIPELINE_KEYS:
            if isinstance(value, list):
                value = tuple(value)
            pipeline_kwargs[key] = value
        elif key.startswith("explain_") and key[len("explain_") :] in _EXPLAIN_KEYS:
            explain_kwargs[key[len("explain_") :]] = value
        else:
            raise WorkspaceError(f"unknown config key: {key!r}")
    config = PipelineConfig(**pipeline_kwargs)
    if explain_kwargs:
        config = replace(config, explain=ExplainConfig(**explain_kwargs))
    return config
