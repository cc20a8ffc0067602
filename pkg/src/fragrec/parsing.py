"""Fragment parsing: API discovery, resolution, sentence identification.

A :class:`~fragrec.corpus.Fragment` goes through four steps:

1. sentence identification (prose boundary detection + code statement
   splitting),
2. API discovery (anchor links, then a lexical fallback with a keyword
   window, plus unconditional matching inside code),
3. pronoun and variable resolution (substituting API names back in, which
   strengthens the signal the scoring stages see),
4. sentence type identification (marginal vs principal).

Everything here is deterministic and rule-based, so a parse can be audited
token by token.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .corpus import ApiCatalog, Fragment, ParagraphKind
from .textutil import tokenize_spans

logger = logging.getLogger(__name__)

API_CONTEXT_KEYWORDS = frozenset({"class", "interface", "api"})
API_CONTEXT_WINDOW = 2

PRONOUNS = frozenset({"it", "this", "these", "they", "them"})

DEFAULT_ABBREVIATIONS = (
    "e.g.", "i.e.", "etc.", "cf.", "vs.", "al.",
    "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "no.", "fig.",
)


class MarginalReason(Enum):
    CONDITIONAL = "conditional"
    ENUMERATION = "enumeration"
    EXAMPLE = "example"
    COMPARATIVE = "comparative"
    CODE_COMMENT = "code_comment"


class MentionOrigin(Enum):
    ANCHOR_LINK = "anchor_link"
    LEXICAL_MATCH = "lexical_match"
    PRONOUN_RESOLVED = "pronoun_resolved"
    VARIABLE_RESOLVED = "variable_resolved"


@dataclass
class Sentence:
    """One prose sentence or one code statement of a fragment."""

    ordinal: int
    text: str
    is_code: bool
    is_comment: bool = False
    marginal_reason: MarginalReason | None = None
    apis: set[str] = field(default_factory=set)
    paragraph_index: int = 0
    span: tuple[int, int] | None = None

    @property
    def is_marginal(self) -> bool:
        return self.marginal_reason is not None

    @property
    def kind(self) -> str:
        return "marginal" if self.is_marginal else "principal"


@dataclass(frozen=True)
class ApiMention:
    api: str
    sentence_ordinal: int
    origin: MentionOrigin


@dataclass(frozen=True)
class VariableBinding:
    variable: str
    api: str
    declaration_statement: int


@dataclass
class ParsedFragment:
    fragment: Fragment
    sentences: list[Sentence]
    mentions: list[ApiMention]
    bindings: list[VariableBinding]

    @property
    def fragment_id(self) -> tuple[str, int]:
        return self.fragment.id

    def apis(self) -> set[str]:
        return {m.api for m in self.mentions}

    def mention_count(self, api: str) -> int:
        return sum(1 for m in self.mentions if m.api == api)

    def sentences_with(self, api: str) -> list[Sentence]:
        return [s for s in self.sentences if api in s.apis]


class CodeStatement(NamedTuple):
    text: str
    is_comment: bool


# ---------------------------------------------------------------------------
# Sentence identification


_BOUNDARY_RE = re.compile(r"([.!?]+[\"')\]]*)(\s+)(?=[\"'(\[]*[A-Z0-9])")


def split_prose_sentences(
    text: str,
    code_spans: tuple[tuple[int, int], ...] = (),
    abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS,
) -> list[tuple[int, int]]:
    """Return (start, end) spans of sentences inside normalized prose.

    A boundary is a run of ``.!?`` followed by whitespace and an upper-case
    letter or digit, unless the terminator sits inside an inline code span
    or completes a known abbreviation. Trailing text without a terminator
    still forms a sentence.
    """
    cuts = []
    for m in _BOUNDARY_RE.finditer(text):
        pos = m.start(1)
        if any(start <= pos < end for start, end in code_spans):
            continue
        head = text[: m.end(1)].rstrip("\"')]")
        if _ends_with_abbreviation(head, abbreviations):
            continue
        cuts.append((m.end(1), m.end()))
    spans = []
    start = 0
    for end, next_start in cuts:
        spans.append((start, end))
        start = next_start
    if text[start:].strip():
        spans.append((start, len(text)))
    out = []
    for s, e in spans:
        chunk = text[s:e]
        s += len(chunk) - len(chunk.lstrip())
        e -= len(chunk) - len(chunk.rstrip())
        if e > s:
            out.append((s, e))
    return out


def _ends_with_abbreviation(head: str, abbreviations: tuple[str, ...]) -> bool:
    low = head.lower()
    for abbr in abbreviations:
        if low.endswith(abbr):
            before = len(low) - len(abbr) - 1
            if before < 0 or not low[before].isalnum():
                return True
    return False


def split_statements(code: str) -> list[CodeStatement]:
    """Split a code block into statements and comment sentences.

    Statements end at semicolons that are outside string literals and
    outside open parentheses, so ``for(int i=0;i<n;i++)`` survives intact.
    Braces also delimit statements, which separates a ``for``/``if`` header
    from its body. ``//`` and ``/* */`` comments come out as their own
    sentences. Unbalanced parentheses at the end of the block flush the
    remainder as one statement with a warning.
    """
    units: list[CodeStatement] = []
    buf: list[str] = []
    depth = 0
    i, n = 0, len(code)
    quote: str | None = None

    def flush_statement() -> None:
        text = " ".join("".join(buf).split())
        if text:
            units.append(CodeStatement(text, False))
        buf.clear()

    while i < n:
        ch = code[i]
        if quote:
            buf.append(ch)
            if ch == "\\" and i + 1 < n:
                buf.append(code[i + 1])
                i += 2
                continue
            if ch == quote:
                quote = None
            i += 1
            continue
        if ch in "\"'":
            quote = ch
            buf.append(ch)
            i += 1
            continue
        if ch == "/" and i + 1 < n and code[i + 1] == "/":
            end = code.find("\n", i)
            end = n if end == -1 else end
            units.append(CodeStatement(code[i:end].strip(), True))
            i = end
            continue
        if ch == "/" and i + 1 < n and code[i + 1] == "*":
            end = code.find("*/", i + 2)
            end = n if end == -1 else end + 2
            units.append(CodeStatement(" ".join(code[i:end].split()), True))
            i = end
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        elif ch == ";" and depth == 0:
            buf.append(ch)
            flush_statement()
            i += 1
            continue
        elif ch in "{}":
            flush_statement()
            i += 1
            continue
        buf.append(ch)
        i += 1
    if "".join(buf).strip():
        if depth != 0:
            logger.warning("unbalanced parentheses at end of code block")
        flush_statement()
    return units


def identify_sentences(
    fragment: Fragment,
    abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS,
) -> list[Sentence]:
    """Sentence boundaries for a fragment, code statements included.

    Ordinals run 1..n over prose sentences and code statements in document
    order. Headings produce no sentences.
    """
    sentences: list[Sentence] = []
    for pi, para in enumerate(fragment.paragraphs):
        if para.kind is ParagraphKind.HEADING:
            continue
        if para.kind is ParagraphKind.CODE_BLOCK:
            for unit in split_statements(para.plain_text):
                sentences.append(
                    Sentence(
                        ordinal=len(sentences) + 1,
                        text=unit.text,
                        is_code=True,
                        is_comment=unit.is_comment,
                        paragraph_index=pi,
                    )
                )
        else:
            for start, end in split_prose_sentences(para.plain_text, para.code_spans, abbreviations):
                sentences.append(
                    Sentence(
                        ordinal=len(sentences) + 1,
                        text=para.plain_text[start:end],
                        is_code=False,
                        paragraph_index=pi,
                        span=(start, end),
                    )
                )
    return sentences


# ---------------------------------------------------------------------------
# API discovery


def discover_apis(
    fragment: Fragment,
    catalog: ApiCatalog,
    sentences: list[Sentence] | None = None,
) -> list[ApiMention]:
    """Find API mentions in a fragment.

    Anchor text equal to a catalog name (or an href equal to a catalog
    spec URL) is the primary signal. In plain prose, a token equal to a
    catalog name counts only when "class", "interface" or "API" occurs
    within two tokens of it. Inside code, catalog-name tokens always count.
    """
    if sentences is None:
        sentences = identify_sentences(fragment)
    mentions: list[ApiMention] = []
    names = set(catalog.names())
    for sent in sentences:
        if sent.is_code:
            for tok, _, _ in tokenize_spans(sent.text):
                if tok in names:
                    mentions.append(ApiMention(tok, sent.ordinal, MentionOrigin.LEXICAL_MATCH))
            continue
        para = fragment.paragraphs[sent.paragraph_index]
        s_start, s_end = sent.span if sent.span else (0, len(sent.text))
        covered: list[tuple[int, int]] = []
        for anchor in para.anchors:
            if not (s_start <= anchor.start < s_end):
                continue
            api = None
            text = anchor.text.strip()
            if text in names:
                api = text
            else:
                entry = catalog.lookup_url(anchor.href)
                if entry is not None:
                    api = entry.simple_name
            if api is not None:
                mentions.append(ApiMention(api, sent.ordinal, MentionOrigin.ANCHOR_LINK))
                covered.append((anchor.start - s_start, anchor.end - s_start))
        spans = tokenize_spans(sent.text)
        for i, (tok, t_start, t_end) in enumerate(spans):
            if tok not in names:
                continue
            if any(c0 <= t_start < c1 for c0, c1 in covered):
                continue
            window = spans[max(0, i - API_CONTEXT_WINDOW) : i] + spans[i + 1 : i + 1 + API_CONTEXT_WINDOW]
            if any(w[0].lower() in API_CONTEXT_KEYWORDS for w in window):
                mentions.append(ApiMention(tok, sent.ordinal, MentionOrigin.LEXICAL_MATCH))
    return mentions


# ---------------------------------------------------------------------------
# Pronoun and variable resolution


def _api_token_positions(text: str, apis: set[str]) -> list[tuple[str, int]]:
    return [(tok, start) for tok, start, _ in tokenize_spans(text) if tok in apis]


def resolve_pronouns(
    sentences: list[Sentence],
    mentions: list[ApiMention],
) -> list[ApiMention]:
    """Replace neuter pronouns with the API names they stand for.

    Sentence texts are rewritten in place; the returned list holds one new
    mention per substitution. The resolver is conservative: a pronoun with
    no API antecedent in its own or the previous sentence stays untouched,
    "this"/"these" directly followed by a word are determiners rather than
    references, and a sentence-final "this" refers forward, so neither is
    replaced.
    """
    apis_by_ordinal: dict[int, set[str]] = {}
    for m in mentions:
        apis_by_ordinal.setdefault(m.sentence_ordinal, set()).add(m.api)
    new_mentions: list[ApiMention] = []
    for idx, sent in enumerate(sentences):
        if sent.is_code:
            continue
        prev = sentences[idx - 1] if idx > 0 else None
        prev_positions = (
            _api_token_positions(prev.text, apis_by_ordinal.get(prev.ordinal, set())) if prev else []
        )
        prev_subject = prev_positions[0][0] if prev_positions else None
        prev_nearest = prev_positions[-1][0] if prev_positions else None
        pos = 0
        while True:
            spans = tokenize_spans(sent.text)
            hit = None
            for i, (tok, t_start, t_end) in enumerate(spans):
                if t_start < pos:
                    continue
                low = tok.lower()
                if low not in PRONOUNS:
                    continue
                if tok not in (low, low.capitalize()):
                    continue
                if low in ("this", "these"):
                    nxt = spans[i + 1] if i + 1 < len(spans) else None
                    if nxt is None:
                        continue  # sentence-final "this" points forward, not back
                    gap = sent.text[t_end : nxt[1]]
                    if (not gap or gap.isspace()) and nxt[0][0].isalpha():
                        continue
                hit = (i, tok, t_start, t_end)
                break
            if hit is None:
                break
            i, tok, t_start, t_end = hit
            own_apis = apis_by_ordinal.get(sent.ordinal, set())
            before = [a for a, p in _api_token_positions(sent.text, own_apis) if p < t_start]
            if i == 0:
                antecedent = prev_subject or prev_nearest
            else:
                antecedent = (before[-1] if before else None) or prev_subject or prev_nearest
            if antecedent is None:
                pos = t_end
                continue
            sent.text = sent.text[:t_start] + antecedent + sent.text[t_end:]
            new_mentions.append(
                ApiMention(antecedent, sent.ordinal, MentionOrigin.PRONOUN_RESOLVED)
            )
            apis_by_ordinal.setdefault(sent.ordinal, set()).add(antecedent)
            pos = t_start + len(antecedent)
    return new_mentions


_DECLARATION_RE = re.compile(r"^\s*([A-Za-z_]\w*)\s+([A-Za-z_]\w*)\s*(?:=|;|$)")


def _token_spans_outside_strings(text: str) -> list[tuple[str, int, int]]:
    spans = []
    i, n = 0, len(text)
    quote = None
    start = None
    while i <= n:
        ch = text[i] if i < n else " "
        if quote:
            if ch == "\\":
                i += 2
                continue
            if ch == quote:
                quote = None
            i += 1
            continue
        if ch in "\"'":
            quote = ch
            i += 1
            continue
        if ch.isalnum() or ch == "_":
            if start is None:
                start = i
        else:
            if start is not None:
                spans.append((text[start:i], start, i))
                start = None
        i += 1
    return spans


def resolve_variables(
    code_sentences: list[Sentence],
    catalog: ApiCatalog,
) -> tuple[list[VariableBinding], list[ApiMention]]:
    """Bind declared variables to their APIs and substitute later uses.

    ``Api ident = ...`` and ``Api ident;`` create a binding. In statements
    after the declaration, standalone occurrences of the variable (tokens
    not in member-access position and outside string literals) are replaced
    by the API name. Redeclaring an identifier rebinds it from that point.
    Statement texts are rewritten in place.
    """
    bindings: list[VariableBinding] = []
    new_mentions: list[ApiMention] = []
    active: dict[str, str] = {}
    catalog_names = set(catalog.names())
    for sent in code_sentences:
        if sent.is_comment:
            continue
        decl = _DECLARATION_RE.match(sent.text)
        declared = None
        if decl and decl.group(1) in catalog_names and decl.group(2) not in catalog_names:
            declared = (decl.group(2), decl.group(1))
        replaced_any = True
        while replaced_any:
            replaced_any = False
            for tok, t_start, t_end in _token_spans_outside_strings(sent.text):
                if tok not in active or tok in catalog_names:
                    continue
                if declared and tok == declared[0]:
                    continue
                if t_start > 0 and sent.text[t_start - 1] == ".":
                    continue
                api = active[tok]
                sent.text = sent.text[:t_start] + api + sent.text[t_end:]
                new_mentions.append(
                    ApiMention(api, sent.ordinal, MentionOrigin.VARIABLE_RESOLVED)
                )
                replaced_any = True
                break
        if declared:
            active[declared[0]] = declared[1]
            bindings.append(VariableBinding(declared[0], declared[1], sent.ordinal))
    return bindings, new_mentions


# ---------------------------------------------------------------------------
# Sentence type identification


_EXAMPLE_RE = re.compile(r"\bfor example\b|\bfor instance\b|\bsuch as\b", re.IGNORECASE)
_CONDITIONAL_RE = re.compile(r"\bif\b|\bwhether\b", re.IGNORECASE)
_COMPARATIVE_RE = re.compile(
    r"\bcompared to\b|\bunlike\b|\bmore\b.+\bthan\b|\bextends?\b|\binherited from\b|\bsubtype of\b",
    re.IGNORECASE,
)
_LIST_SEPARATORS = frozenset({",", "and", "or"})
_FINE_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|[^\sA-Za-z0-9_]")


def _has_api_enumeration(text: str, apis: set[str]) -> bool:
    """True when more than two APIs form one comma/and/or separated list."""
    if len(apis) == 0:
        return False
    tokens = _FINE_TOKEN_RE.findall(text)
    run = 0
    best = 0
    pending_separator = True
    for tok in tokens:
        if tok in apis:
            if pending_separator:
                run += 1
            else:
                run = 1
            best = max(best, run)
            pending_separator = False
        elif tok in _LIST_SEPARATORS:
            pending_separator = True
        else:
            run = 0
            pending_separator = False
    return best > 2


def classify_sentence_kind(sentence: Sentence) -> MarginalReason | None:
    """Marginal reason for a sentence, or None for a principal sentence.

    The checks run in a fixed order and the first hit wins. Keyword checks
    apply to prose only: an ``if`` statement in code is a code sentence,
    not a conditional sentence, and a comment is marginal simply for being
    a comment.
    """
    if sentence.is_comment:
        return MarginalReason.CODE_COMMENT
    if sentence.is_code:
        return None
    if _CONDITIONAL_RE.search(sentence.text):
        return MarginalReason.CONDITIONAL
    if _has_api_enumeration(sentence.text, sentence.apis):
        return MarginalReason.ENUMERATION
    if _EXAMPLE_RE.search(sentence.text):
        return MarginalReason.EXAMPLE
    if _COMPARATIVE_RE.search(sentence.text):
        return MarginalReason.COMPARATIVE
    return None


# ---------------------------------------------------------------------------
# Full parse


def parse_fragment(
    fragment: Fragment,
    catalog: ApiCatalog,
    resolve: bool = True,
    abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS,
) -> ParsedFragment:
    """Run the full parsing pipeline over one fragment."""
    sentences = identify_sentences(fragment, abbreviations)
    mentions = discover_apis(fragment, catalog, sentences)
    bindings: list[VariableBinding] = []
    if resolve:
        mentions.extend(resolve_pronouns(sentences, mentions))
        code_sentences = [s for s in sentences if s.is_code]
        bindings, var_mentions = resolve_variables(code_sentences, catalog)
        mentions.extend(var_mentions)
    for sent in sentences:
        sent.apis = {m.api for m in mentions if m.sentence_ordinal == sent.ordinal}
    for sent in sentences:
        sent.marginal_reason = classify_sentence_kind(sent)
    return ParsedFragment(
        fragment=fragment,
        sentences=sentences,
        mentions=mentions,
        bindings=bindings,
    )
