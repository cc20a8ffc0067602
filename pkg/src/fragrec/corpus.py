"""Corpus loading and tutorial segmentation.

Tutorials arrive as HTML files. Each file becomes a :class:`TutorialDoc`
whose block-level elements map to :class:`Paragraph` objects (prose,
code block, or heading), and each document is then cut into consecutive
:class:`Fragment` slices of roughly 100 to 300 words.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from html.parser import HTMLParser
from pathlib import Path

from .errors import InputError
from .textutil import word_count

logger = logging.getLogger(__name__)

MIN_FRAGMENT_WORDS = 100
MAX_FRAGMENT_WORDS = 300


class ParagraphKind(Enum):
    PROSE = "prose"
    CODE_BLOCK = "code_block"
    HEADING = "heading"


@dataclass(frozen=True)
class Anchor:
    """A hyperlink inside a prose paragraph: (text, href, span in plain_text)."""

    text: str
    href: str
    start: int
    end: int


@dataclass(frozen=True)
class Paragraph:
    kind: ParagraphKind
    raw_html: str
    plain_text: str
    word_count: int
    anchors: tuple[Anchor, ...] = ()
    code_spans: tuple[tuple[int, int], ...] = ()

    def content_words(self) -> int:
        """Words this paragraph contributes to fragment sizing.

        Headings are structural, not content: they count zero.
        """
        return 0 if self.kind is ParagraphKind.HEADING else self.word_count


@dataclass(frozen=True)
class TutorialDoc:
    id: str
    title: str
    paragraphs: tuple[Paragraph, ...]
    source_path: str


@dataclass(frozen=True)
class Fragment:
    """A consecutive run of paragraphs; the unit of relevance decisions.

    ``word_count`` uses heading-free accounting (see ``content_words``).
    """

    id: tuple[str, int]
    paragraphs: tuple[Paragraph, ...]
    word_count: int

    @property
    def tutorial_id(self) -> str:
        return self.id[0]

    @property
    def ordinal(self) -> int:
        return self.id[1]

    def plain_text(self) -> str:
        return "\n".join(p.plain_text for p in self.paragraphs if p.plain_text)


@dataclass(frozen=True)
class ApiEntry:
    simple_name: str
    qualified_name: str | None = None
    spec_url: str | None = None


class ApiCatalog:
    """Catalog of class/interface-level API names, the query vocabulary."""

    def __init__(self, entries: list[ApiEntry]):
        if not entries:
            raise InputError("empty API catalog")
        self.entries = tuple(entries)
        self._by_name: dict[str, ApiEntry] = {}
        self._by_url: dict[str, ApiEntry] = {}
        for e in entries:
            if not e.simple_name:
                raise InputError("API catalog entry with empty name")
            if e.simple_name in self._by_name:
                raise InputError(f"duplicate API name in catalog: {e.simple_name}")
            self._by_name[e.simple_name] = e
            if e.spec_url:
                self._by_url[e.spec_url] = e

    def __contains__(self, simple_name: str) -> bool:
        return simple_name in self._by_name

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [e.simple_name for e in self.entries]

    def lookup(self, simple_name: str) -> ApiEntry | None:
        return self._by_name.get(simple_name)

    def lookup_url(self, href: str) -> ApiEntry | None:
        return self._by_url.get(href)

    def api_tokens(self) -> frozenset[str]:
        """Lowercased names, the distinguished scoring tokens."""
        return frozenset(e.simple_name.lower() for e in self.entries)


def load_catalog(path: str | Path) -> ApiCatalog:
    """Read a catalog file: one ``Name[<TAB>qualified[<TAB>url]]`` per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    entries = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("\t")]
        entries.append(
            ApiEntry(
                simple_name=parts[0],
                qualified_name=parts[1] if len(parts) > 1 and parts[1] else None,
                spec_url=parts[2] if len(parts) > 2 and parts[2] else None,
            )
        )
    return ApiCatalog(entries)


_PROSE_TAGS = {"p", "li", "dd", "dt", "blockquote", "td", "th"}
_HEADING_TAGS = {"h1", "h2", "h3", "h4", "h5", "h6"}
_SKIP_TAGS = {"script", "style", "head"}


class _TextBuilder:
    """Accumulates prose text with whitespace collapsed to single spaces."""

    def __init__(self) -> None:
        self.parts: list[str] = []
        self.length = 0
        self._pending_space = False

    def feed(self, data: str) -> None:
        if not data:
            return
        if data[0].isspace() and self.length:
            self._pending_space = True
        words = data.split()
        for w in words:
            if self._pending_space and self.length:
                self.parts.append(" ")
                self.length += 1
            self.parts.append(w)
            self.length += len(w)
            self._pending_space = True
        if words and not data[-1].isspace():
            self._pending_space = False

    def mark(self) -> int:
        """Offset where the next fed word will start."""
        if self._pending_space and self.length:
            return self.length + 1
        return self.length

    def text(self) -> str:
        return "".join(self.parts)


class _BlockCollector(HTMLParser):
    """Flattens an HTML document into an ordered list of paragraph blocks.

    Nested blocks are not modelled: a <pre> opening inside a prose block
    closes the prose block and the prose resumes afterwards, so no text is
    lost and document order is preserved.
    """

    def __init__(self, raw: str):
        super().__init__(convert_charrefs=True)
        self._raw = raw
        self._line_offsets = [0]
        for line in raw.splitlines(keepends=True):
            self._line_offsets.append(self._line_offsets[-1] + len(line))
        self.blocks: list[Paragraph] = []
        self.title = ""
        self._in_title = False
        self._skip_depth = 0
        self._kind: ParagraphKind | None = None
        self._builder = _TextBuilder()
        self._code_chunks: list[str] = []
        self._anchors: list[Anchor] = []
        self._anchor_href: str | None = None
        self._anchor_start = 0
        self._code_span_start: int | None = None
        self._code_spans: list[tuple[int, int]] = []
        self._raw_start = 0

    def _offset(self) -> int:
        line, col = self.getpos()
        return self._line_offsets[line - 1] + col

    def _open(self, kind: ParagraphKind) -> None:
        if self._kind is not None:
            self._close()
        self._kind = kind
        self._builder = _TextBuilder()
        self._code_chunks = []
        self._anchors = []
        self._code_spans = []
        self._anchor_href = None
        self._code_span_start = None
        self._raw_start = self._offset()

    def _close(self, raw_end: int | None = None) -> None:
        if self._kind is None:
            return
        if self._anchor_href is not None:
            self._finish_anchor()
        if self._code_span_start is not None:
            span = self._trim_span(self._builder.text(), self._code_span_start, self._builder.length)
            if span[1] > span[0]:
                self._code_spans.append(span)
            self._code_span_start = None
        if self._kind is ParagraphKind.CODE_BLOCK:
            text = "".join(self._code_chunks).strip("\n").rstrip()
        else:
            text = self._builder.text()
        raw = self._raw[self._raw_start : raw_end if raw_end is not None else self._offset()]
        if text:
            self.blocks.append(
                Paragraph(
                    kind=self._kind,
                    raw_html=raw,
                    plain_text=text,
                    word_count=word_count(text),
                    anchors=tuple(self._anchors),
                    code_spans=tuple(self._code_spans),
                )
            )
        self._kind = None

    def _finish_anchor(self) -> None:
        full = self._builder.text()
        start, end = self._trim_span(full, self._anchor_start, self._builder.length)
        if end > start:
            self._anchors.append(Anchor(full[start:end], self._anchor_href or "", start, end))
        self._anchor_href = None

    @staticmethod
    def _trim_span(text: str, start: int, end: int) -> tuple[int, int]:
        end = min(end, len(text))
        start = min(start, end)
        while start < end and text[start] == " ":
            start += 1
        while end > start and text[end - 1] == " ":
            end -= 1
        return start, end

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        if self._skip_depth:
            return
        if tag == "title":
            self._in_title = True
        elif tag == "pre":
            self._open(ParagraphKind.CODE_BLOCK)
        elif tag in _HEADING_TAGS:
            self._open(ParagraphKind.HEADING)
        elif tag in _PROSE_TAGS:
            self._open(ParagraphKind.PROSE)
        elif self._kind is ParagraphKind.PROSE:
            if tag == "a":
                self._anchor_href = dict(attrs).get("href", "") or ""
                self._anchor_start = self._builder.mark()
            elif tag == "code":
                self._code_span_start = self._builder.mark()
            elif tag == "br":
                self._builder.feed(" ")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if self._skip_depth:
            return
        if tag == "title":
            self._in_title = False
        elif tag == "pre" and self._kind is ParagraphKind.CODE_BLOCK:
            self._close(raw_end=self._offset() + len(tag) + 3)
        elif tag in _HEADING_TAGS and self._kind is ParagraphKind.HEADING:
            self._close(raw_end=self._offset() + len(tag) + 3)
        elif tag in _PROSE_TAGS and self._kind is ParagraphKind.PROSE:
            self._close(raw_end=self._offset() + len(tag) + 3)
        elif self._kind is ParagraphKind.PROSE:
            if tag == "a" and self._anchor_href is not None:
                self._finish_anchor()
            elif tag == "code" and self._code_span_start is not None:
                span = self._trim_span(self._builder.text(), self._code_span_start, self._builder.length)
                if span[1] > span[0]:
                    self._code_spans.append(span)
                self._code_span_start = None

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._in_title:
            self.title += data
        elif self._kind is ParagraphKind.CODE_BLOCK:
            self._code_chunks.append(data)
        elif self._kind is not None:
            self._builder.feed(data)

    def close(self):
        super().close()
        self._close()


def parse_tutorial_html(html: str, doc_id: str, source_path: str = "") -> TutorialDoc:
    """Parse one HTML tutorial into a :class:`TutorialDoc`."""
    collector = _BlockCollector(html)
    collector.feed(html)
    collector.close()
    title = collector.title.strip()
    if not title:
        heading = next((b for b in collector.blocks if b.kind is ParagraphKind.HEADING), None)
        title = heading.plain_text if heading else doc_id
    return TutorialDoc(
        id=doc_id,
        title=title,
        paragraphs=tuple(collector.blocks),
        source_path=source_path,
    )


def load_corpus(
    corpus_dir: str | Path,
    catalog_path: str | Path,
    errors: list[tuple[str, Exception]] | None = None,
) -> tuple[list[TutorialDoc], ApiCatalog]:
    """Load every ``*.html`` tutorial under ``corpus_dir`` plus the catalog.

    Unreadable tutorials are logged (and appended to ``errors`` when given)
    and skipped; an empty or missing catalog is fatal.
    """
    catalog = load_catalog(catalog_path)
    corpus_dir = Path(corpus_dir)
    files = sorted(corpus_dir.glob("*.html"))
    if not files:
        raise InputError(f"no HTML tutorials found in {corpus_dir}")
    docs = []
    for path in files:
        try:
            html = path.read_text(encoding="utf-8", errors="replace")
            docs.append(parse_tutorial_html(html, doc_id=path.stem, source_path=str(path)))
        except Exception as exc:  # noqa: BLE001 - per-file isolation is the contract
            logger.warning("skipping unreadable tutorial %s: %s", path, exc)
            if errors is not None:
                errors.append((str(path), exc))
    if not docs:
        raise InputError(f"no tutorial in {corpus_dir} could be parsed")
    return docs, catalog


def segment_tutorial(doc: TutorialDoc) -> list[Fragment]:
    """Cut a tutorial into consecutive fragments of bounded length.

    Paragraphs merge greedily left to right. A fragment keeps absorbing
    paragraphs while it is under 100 words (overshoot past 300 is accepted
    in that case, since paragraphs are atomic) and otherwise while the next
    paragraph fits within 300 words. The trailing remainder is kept even
    when it falls under 100 words. Headings count zero words and attach to
    the fragment that starts after them.
    """
    if not doc.paragraphs:
        raise InputError(f"tutorial {doc.id} has no paragraphs")
    fragments: list[Fragment] = []
    current: list[Paragraph] = []
    words = 0

    def flush(peel_headings: bool) -> list[Paragraph]:
        nonlocal current, words
        carry: list[Paragraph] = []
        body = list(current)
        if peel_headings:
            while body and body[-1].kind is ParagraphKind.HEADING:
                carry.insert(0, body.pop())
        if body:
            fragments.append(
                Fragment(
                    id=(doc.id, len(fragments) + 1),
                    paragraphs=tuple(body),
                    word_count=sum(p.content_words() for p in body),
                )
            )
        current = []
        words = 0
        return carry

    for para in doc.paragraphs:
        w = para.content_words()
        if current and words >= MIN_FRAGMENT_WORDS and words + w > MAX_FRAGMENT_WORDS:
            carried = flush(peel_headings=True)
            current.extend(carried)
        current.append(para)
        words += w
    if current:
        flush(peel_headings=False)
    return fragments
