"""Builders shared by the test modules."""

from __future__ import annotations

from fragrec.corpus import Fragment, Paragraph, ParagraphKind
from fragrec.parsing import ApiMention, MentionOrigin, ParsedFragment, Sentence


def prose_paragraph(text: str) -> Paragraph:
    return Paragraph(
        kind=ParagraphKind.PROSE,
        raw_html="",
        plain_text=text,
        word_count=len(text.split()),
    )


def words_paragraph(n: int) -> Paragraph:
    """A prose paragraph of exactly n one-letter words."""
    return prose_paragraph(" ".join(["w"] * n))


def heading_paragraph(text: str = "Heading") -> Paragraph:
    return Paragraph(
        kind=ParagraphKind.HEADING,
        raw_html="",
        plain_text=text,
        word_count=len(text.split()),
    )


def make_fragment(paragraphs, tutorial="t", ordinal=1) -> Fragment:
    return Fragment(
        id=(tutorial, ordinal),
        paragraphs=tuple(paragraphs),
        word_count=sum(p.content_words() for p in paragraphs),
    )


def make_parsed(
    sentence_specs,
    tutorial="t",
    ordinal=1,
    bindings=(),
) -> ParsedFragment:
    """Assemble a ParsedFragment from (text, apis, marginal_reason) tuples.

    Mentions are synthesized one per (sentence, api), which is enough for
    the filter and relevance stages under test.
    """
    sentences = []
    mentions = []
    for i, spec in enumerate(sentence_specs, start=1):
        text, apis, reason = spec
        sent = Sentence(
            ordinal=i,
            text=text,
            is_code=False,
            marginal_reason=reason,
            apis=set(apis),
        )
        sentences.append(sent)
        for api in apis:
            mentions.append(ApiMention(api, i, MentionOrigin.LEXICAL_MATCH))
    fragment = make_fragment([prose_paragraph(s.text) for s in sentences], tutorial, ordinal)
    return ParsedFragment(
        fragment=fragment,
        sentences=sentences,
        mentions=mentions,
        bindings=list(bindings),
    )
