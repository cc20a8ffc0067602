"""Combining the two correlation scores into relevance verdicts.

Per fragment, both score types are normalized by the fragment's maximum
of that type. An API whose every containing sentence is marginal is
irrelevant outright; otherwise it is relevant when both normalized scores
reach the tutorial's threshold. The threshold is either fixed or derived
from the tutorial itself: one minus the share of sentences that mention
an API or call one of its methods.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import ApiCatalog
from .filtering import RuleId
from .parsing import ParsedFragment

SCORE_MODES = ("both", "topic", "pagerank")


@dataclass(frozen=True)
class ThresholdConfig:
    """Either automatic (tutorial-derived) or a fixed value in [0, 1]."""

    mode: str  # "auto" | "fixed"
    value: float | None = None

    @classmethod
    def auto(cls) -> "ThresholdConfig":
        return cls(mode="auto")

    @classmethod
    def fixed(cls, value: float) -> "ThresholdConfig":
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {value}")
        return cls(mode="fixed", value=value)

    @classmethod
    def parse(cls, raw: str) -> "ThresholdConfig":
        if raw.strip().lower() == "auto":
            return cls.auto()
        try:
            return cls.fixed(float(raw))
        except ValueError as exc:
            raise ValueError(f"threshold must be 'auto' or a number in [0, 1]: {raw!r}") from exc


@dataclass
class RelevanceRecord:
    fragment_id: tuple[str, int]
    api: str
    topic_score: float
    pagerank_score: float
    topic_score_norm: float
    pagerank_score_norm: float
    marginal_only: bool
    relevant: bool
    filtered_by: frozenset[RuleId] = frozenset()


_METHOD_CALL_RE = re.compile(r"\b([A-Za-z_]\w*)\s*\.\s*[A-Za-z_]\w*\s*\(")


def _sentence_references_api(sent_text: str, apis: set[str], receivers: set[str]) -> bool:
    """True when the text calls a method on an API or a bound variable."""
    for m in _METHOD_CALL_RE.finditer(sent_text):
        if m.group(1) in apis or m.group(1) in receivers:
            return True
    return False


def compute_threshold(tutorial_fragments: list[ParsedFragment], catalog: ApiCatalog) -> float:
    """Tutorial-specific automatic threshold.

    One minus the fraction of the tutorial's sentences (filtered fragments
    included) that contain an API mention or a method call whose receiver
    is a catalog API or a variable bound to one.
    """
    api_names = set(catalog.names())
    total = 0
    containing = 0
    for pf in tutorial_fragments:
        receivers = {b.variable for b in pf.bindings}
        for sent in pf.sentences:
            total += 1
            if sent.apis or _sentence_references_api(sent.text, api_names, receivers):
                containing += 1
    if total == 0:
        raise ValueError("tutorial has no sentences; cannot derive a threshold")
    return 1.0 - containing / total


def normalize_scores(raw: dict[str, float]) -> dict[str, float]:
    """Divide by the fragment-wide maximum; all-zero maxima normalize to 0."""
    peak = max(raw.values(), default=0.0)
    if peak <= 0:
        return {api: 0.0 for api in raw}
    return {api: value / peak for api, value in raw.items()}


def identify_relevance(
    pf: ParsedFragment,
    scores: dict[str, tuple[float, float]],
    threshold: float,
    score_mode: str = "both",
) -> list[RelevanceRecord]:
    """Apply the decision scheme to one retained fragment.

    ``scores`` maps each API in the fragment to its raw (topic, pagerank)
    score pair. ``score_mode`` restricts the conjunction to a single score
    type for ablation runs.
    """
    if score_mode not in SCORE_MODES:
        raise ValueError(f"score_mode must be one of {SCORE_MODES}")
    norm_topic = normalize_scores({api: s[0] for api, s in scores.items()})
    norm_pagerank = normalize_scores({api: s[1] for api, s in scores.items()})
    records = []
    for api in sorted(scores):
        containing = pf.sentences_with(api)
        marginal_only = bool(containing) and all(s.is_marginal for s in containing)
        nt, npr = norm_topic[api], norm_pagerank[api]
        if marginal_only:
            relevant = False
        elif score_mode == "topic":
            relevant = nt >= threshold
        elif score_mode == "pagerank":
            relevant = npr >= threshold
        else:
            relevant = nt >= threshold and npr >= threshold
        records.append(
            RelevanceRecord(
                fragment_id=pf.fragment.id,
                api=api,
                topic_score=scores[api][0],
                pagerank_score=scores[api][1],
                topic_score_norm=nt,
                pagerank_score_norm=npr,
                marginal_only=marginal_only,
                relevant=relevant,
            )
        )
    return records
