"""Detection of non-explanatory fragments.

A fragment that fires any of five rules is excluded from scoring and all
of its APIs are treated as irrelevant. The rules are independent
predicates over a parsed fragment; the verdict records every rule that
fired, not just the first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .parsing import ParsedFragment

MIN_SENTENCES = 5
MIN_API_SENTENCE_RATIO = 0.20

DEFAULT_INDICATOR_PHRASES = (
    "summary",
    "overview",
    "introduction",
    "for more information about",
    "more details in",
)


class RuleId(Enum):
    SINGLE_API_ONCE = "single_api_once"
    TOO_SHORT = "too_short"
    LOW_API_SENTENCE_RATIO = "low_api_sentence_ratio"
    MARGINAL_ONLY = "marginal_only"
    INDICATOR_PHRASE = "indicator_phrase"


@dataclass(frozen=True)
class FilterVerdict:
    fragment_id: tuple[str, int]
    fired_rules: frozenset[RuleId]

    @property
    def filtered(self) -> bool:
        return bool(self.fired_rules)


def rule_single_api_once(pf: ParsedFragment) -> bool:
    """Exactly one distinct API, mentioned exactly once."""
    apis = pf.apis()
    return len(apis) == 1 and len(pf.mentions) == 1


def rule_too_short(pf: ParsedFragment) -> bool:
    """Fewer than five sentences (code statements count as sentences)."""
    return len(pf.sentences) < MIN_SENTENCES


def rule_low_api_sentence_ratio(pf: ParsedFragment) -> bool:
    """Less than 20% of sentences contain at least one API."""
    if not pf.sentences:
        return True
    with_api = sum(1 for s in pf.sentences if s.apis)
    return with_api / len(pf.sentences) < MIN_API_SENTENCE_RATIO


def rule_marginal_only(pf: ParsedFragment) -> bool:
    """Every API occurs only in marginal sentences.

    Vacuously false for a fragment with no APIs; that case is caught by
    the ratio rule instead.
    """
    api_sentences = [s for s in pf.sentences if s.apis]
    if not api_sentences:
        return False
    return all(s.is_marginal for s in api_sentences)


def _compile_indicators(phrases: tuple[str, ...]) -> list[re.Pattern[str]]:
    patterns = []
    for phrase in phrases:
        escaped = re.escape(phrase.strip())
        if " " in phrase.strip():
            patterns.append(re.compile(escaped, re.IGNORECASE))
        else:
            patterns.append(re.compile(rf"\b{escaped}\b", re.IGNORECASE))
    return patterns


def rule_indicator_phrase(
    pf: ParsedFragment,
    phrases: tuple[str, ...] = DEFAULT_INDICATOR_PHRASES,
) -> bool:
    """The fragment contains a configured indicator term or phrase.

    Single-word indicators match at word boundaries; multi-word phrases
    match as substrings. Both are case-insensitive.
    """
    text = pf.fragment.plain_text()
    return any(p.search(text) for p in _compile_indicators(phrases))


def apply_filter(
    pf: ParsedFragment,
    indicator_phrases: tuple[str, ...] = DEFAULT_INDICATOR_PHRASES,
) -> FilterVerdict:
    """Evaluate all five rules and collect the ones that fire."""
    fired = set()
    if rule_single_api_once(pf):
        fired.add(RuleId.SINGLE_API_ONCE)
    if rule_too_short(pf):
        fired.add(RuleId.TOO_SHORT)
    if rule_low_api_sentence_ratio(pf):
        fired.add(RuleId.LOW_API_SENTENCE_RATIO)
    if rule_marginal_only(pf):
        fired.add(RuleId.MARGINAL_ONLY)
    if rule_indicator_phrase(pf, indicator_phrases):
        fired.add(RuleId.INDICATOR_PHRASE)
    return FilterVerdict(fragment_id=pf.fragment.id, fired_rules=frozenset(fired))


def load_indicator_phrases(path: str | Path) -> tuple[str, ...]:
    """Read one indicator phrase per line; blank and ``#`` lines skipped."""
    phrases = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            phrases.append(line)
    return tuple(phrases)
