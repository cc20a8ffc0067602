"""Shared text utilities: tokenization, stop words, word counting."""

from __future__ import annotations

import re

# Snowball English stop-word list. Kept as data in code so the vocabulary
# of fitted models is reproducible without external files.
STOP_WORDS = frozenset("""
a about above after again against all am an and any are aren't as at be
because been before being below between both but by can't cannot could
couldn't did didn't do does doesn't doing don't down during each few for
from further had hadn't has hasn't have haven't having he he'd he'll he's
her here here's hers herself him himself his how how's i i'd i'll i'm i've
if in into is isn't it it's its itself let's me more most mustn't my myself
no nor not of off on once only or other ought our ours ourselves out over
own same shan't she she'd she'll she's should shouldn't so some such than
that that's the their theirs them themselves then there there's these they
they'd they'll they're they've this those through to too under until up
very was wasn't we we'd we'll we're we've were weren't what what's when
when's where where's which while who who's whom why why's with won't would
wouldn't you you'd you'll you're you've your yours yourself yourselves
""".split())

_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+")


def tokenize(text: str) -> list[str]:
    """Split text into identifier-like tokens, preserving case."""
    return _WORD_RE.findall(text)


def tokenize_spans(text: str) -> list[tuple[str, int, int]]:
    """Like :func:`tokenize` but with (token, start, end) character spans."""
    return [(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def content_tokens(text: str, api_tokens: frozenset[str] | set[str] = frozenset()) -> list[str]:
    """Lowercased tokens with stop words and digit-only tokens removed.

    Tokens in ``api_tokens`` (lowercased API names) survive unconditionally:
    they are the terms the scoring stages care about and must never be
    stop-listed or dropped.
    """
    out = []
    for tok in tokenize(text):
        low = tok.lower()
        if low in api_tokens:
            out.append(low)
        elif low in STOP_WORDS or low.isdigit():
            continue
        else:
            out.append(low)
    return out


def word_count(text: str) -> int:
    """Whitespace-token count, the unit used for fragment sizing."""
    return len(text.split())
