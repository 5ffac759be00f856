"""Encyclopedia dump ingestion.

Streams article pages out of an XML export, strips wiki markup down to plain
text with section attribution, splits bodies into sentences with Indic-aware
terminators and non-breaking prefixes, and applies the three pruning filters
(language, length, content word) in a fixed order.
"""

from __future__ import annotations

import bz2
import gzip
import html
import json
import logging
import re
import xml.parsers.expat
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import BinaryIO, Collection, Iterable, Iterator, Mapping

from .errors import DumpParseError
from .providers import ContentTagger, LanguageDetector

logger = logging.getLogger(__name__)

SUPPORTED_LANGUAGES = ("bn", "en", "gu", "hi", "kn", "mr", "ta", "te")

MIN_SENTENCE_TOKENS = 5
MAX_SENTENCE_TOKENS = 100

#: Sentence terminators: western triple plus danda and double danda.
SENTENCE_TERMINATORS = frozenset({".", "?", "!", "।", "॥"})


@dataclass(frozen=True)
class WikiPage:
    page_id: str
    entity_id: str
    language: str
    title: str
    sections: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Sentence:
    text: str
    language: str
    section: str
    page_id: str
    entity_id: str
    ordinal: int

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("sentence text must be non-empty")

    @property
    def token_count(self) -> int:
        return len(self.text.split())


class RejectReason(str, Enum):
    TOO_SHORT = "TooShort"
    TOO_LONG = "TooLong"
    WRONG_LANGUAGE = "WrongLanguage"
    NO_CONTENT_WORD = "NoContentWord"


@dataclass
class FilterReport:
    kept: list[Sentence] = field(default_factory=list)
    rejected: list[tuple[Sentence, RejectReason]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Markup stripping

_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_REF_RE = re.compile(r"<ref[^<>]*/>|<ref[^<>]*>.*?</ref>", re.DOTALL | re.IGNORECASE)
_PIPED_LINK_RE = re.compile(r"\[\[(?:[^\[\]|]*)\|([^\[\]]*)\]\]")
_PLAIN_LINK_RE = re.compile(r"\[\[([^\[\]|]*)\]\]")
_EXT_LINK_TEXT_RE = re.compile(r"\[(?:https?|ftp)://[^\s\]]+\s+([^\]]*)\]")
_EXT_LINK_BARE_RE = re.compile(r"\[(?:https?|ftp)://[^\s\]]+\]")
_QUOTES_RE = re.compile(r"'{2,}")
_TAG_RE = re.compile(r"</?[a-zA-Z][^<>]*>")
_HEADER_RE = re.compile(r"(={2,6})[ \t]*([^=\n]+?)[ \t]*\1")
_MEDIA_PREFIXES = ("file:", "image:", "category:")


def _drop_balanced(text: str, opener: str, closer: str) -> str:
    """Remove possibly-nested opener...closer spans (templates, tables)."""
    out: list[str] = []
    depth = 0
    i = 0
    n = len(text)
    while i < n:
        if text.startswith(opener, i):
            depth += 1
            i += len(opener)
        elif depth and text.startswith(closer, i):
            depth -= 1
            i += len(closer)
        else:
            if depth == 0:
                out.append(text[i])
            i += 1
    return "".join(out)


def _drop_media_links(text: str) -> str:
    """Remove [[File:...]] style links, tolerating nested brackets in captions."""
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        if text.startswith("[[", i):
            rest = text[i + 2 : i + 16].lower()
            if any(rest.startswith(p) for p in _MEDIA_PREFIXES):
                depth = 1
                j = i + 2
                while j < n and depth:
                    if text.startswith("[[", j):
                        depth += 1
                        j += 2
                    elif text.startswith("]]", j):
                        depth -= 1
                        j += 2
                    else:
                        j += 1
                i = j
                continue
        out.append(text[i])
        i += 1
    return "".join(out)


def strip_markup(text: str) -> str:
    """Best-effort conversion of wiki markup to plain text.

    Unresolvable constructs (templates, tables) are dropped rather than
    rendered; downstream filters remove the resulting fragments.
    """
    text = _COMMENT_RE.sub("", text)
    text = _REF_RE.sub("", text)
    text = _drop_balanced(text, "{{", "}}")
    text = _drop_balanced(text, "{|", "|}")
    text = _drop_media_links(text)
    for _ in range(4):  # peel nested link markup, innermost first
        new = _PIPED_LINK_RE.sub(r"\1", text)
        new = _PLAIN_LINK_RE.sub(r"\1", new)
        if new == text:
            break
        text = new
    text = _EXT_LINK_TEXT_RE.sub(r"\1", text)
    text = _EXT_LINK_BARE_RE.sub("", text)
    text = _QUOTES_RE.sub("", text)
    text = _TAG_RE.sub("", text)
    text = html.unescape(text)
    lines = [ln.strip() for ln in text.splitlines()]
    return "\n".join(ln for ln in lines if ln).strip()


def parse_sections(markup: str) -> list[tuple[str, str]]:
    """Split raw page markup into (header, plain-text body) in document order.

    The lead section gets an empty header.  Sections whose body strips down to
    nothing are dropped.
    """
    sections: list[tuple[str, str]] = []
    cursor = 0
    header = ""
    for match in _HEADER_RE.finditer(markup):
        sections.append((header, markup[cursor : match.start()]))
        header = strip_markup(match.group(2)).strip()
        cursor = match.end()
    sections.append((header, markup[cursor:]))
    out = []
    for header, raw in sections:
        body = strip_markup(raw)
        if body:
            out.append((header, body))
    return out


# ---------------------------------------------------------------------------
# Dump extraction

_ARTICLE_NAMESPACE = "0"


class _PageAccumulator:
    """Collects <page> children during the expat stream."""

    __slots__ = ("title", "ns", "page_id", "redirect", "text")

    def __init__(self):
        self.title: list[str] = []
        self.ns: list[str] = []
        self.page_id: list[str] = []
        self.redirect = False
        self.text: list[str] = []


def _open_dump(source) -> BinaryIO:
    if hasattr(source, "read"):
        return source
    path = Path(source)
    name = path.name.lower()
    if name.endswith(".bz2"):
        return bz2.open(path, "rb")
    if name.endswith(".gz"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def extract_pages(
    source,
    language: str,
    *,
    entity_map: Mapping[str, str] | None = None,
    chunk_size: int = 1 << 16,
) -> Iterator[WikiPage]:
    """Stream article pages out of an XML export.

    `source` is a path (optionally .bz2/.gz) or a binary file object.
    Redirects and non-article namespaces are skipped; pages whose markup fails
    to strip are skipped with a warning, never aborting the stream.
    Malformed XML raises DumpParseError carrying the byte offset.
    `entity_map` optionally maps page titles to entity ids.
    """
    parser = xml.parsers.expat.ParserCreate()
    stack: list[str] = []
    page: _PageAccumulator | None = None
    ready: list[WikiPage] = []
    entity_map = entity_map or {}

    def start(name, attrs):
        nonlocal page
        stack.append(name)
        if name == "page":
            page = _PageAccumulator()
        elif name == "redirect" and page is not None:
            page.redirect = True

    def chars(data):
        if page is None or len(stack) < 2:
            return
        parent, current = stack[-2], stack[-1]
        if parent == "page":
            if current == "title":
                page.title.append(data)
            elif current == "ns":
                page.ns.append(data)
            elif current == "id":
                page.page_id.append(data)
        elif parent == "revision" and current == "text":
            page.text.append(data)

    def end(name):
        nonlocal page
        stack.pop()
        if name != "page" or page is None:
            return
        finished, page = page, None
        ns = "".join(finished.ns).strip() or _ARTICLE_NAMESPACE
        if finished.redirect or ns != _ARTICLE_NAMESPACE:
            return
        title = "".join(finished.title).strip()
        try:
            sections = tuple(parse_sections("".join(finished.text)))
        except Exception:
            logger.warning("markup strip failed for page %r; skipped", title)
            return
        ready.append(
            WikiPage(
                page_id="".join(finished.page_id).strip(),
                entity_id=entity_map.get(title, ""),
                language=language,
                title=title,
                sections=sections,
            )
        )

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars

    stream = _open_dump(source)
    try:
        while True:
            chunk = stream.read(chunk_size)
            try:
                parser.Parse(chunk, not chunk)
            except xml.parsers.expat.ExpatError as exc:
                raise DumpParseError(
                    f"malformed XML at byte {parser.ErrorByteIndex}: {exc}"
                ) from exc
            yield from ready
            ready.clear()
            if not chunk:
                break
    finally:
        if stream is not source:
            stream.close()


# ---------------------------------------------------------------------------
# Sentence splitting

_PREFIX_STRIP = "(\"'‘“"


@lru_cache(maxsize=1)
def _shipped_prefixes() -> dict[str, tuple[str, ...]]:
    raw = resources.files("factalign.data").joinpath("nonbreaking_prefixes.json").read_text("utf-8")
    return {lang: tuple(words) for lang, words in json.loads(raw).items()}


def nonbreaking_prefixes(language: str) -> frozenset[str]:
    """Abbreviations that must not end a sentence, e.g. "Dr."; configurable data."""
    shipped = _shipped_prefixes()
    return frozenset(shipped.get(language, ()) + shipped.get("*", ()))


def split_sentences(
    body: str,
    language: str,
    prefixes: Collection[str] | None = None,
) -> list[str]:
    """Split plain text into sentences on terminator punctuation.

    A split happens after a terminator followed by whitespace (or end of
    text), unless the terminator is a '.' closing a known non-breaking prefix.
    No characters are lost: re-joining the result with single spaces preserves
    every non-whitespace character of the input.
    """
    if prefixes is None:
        prefixes = nonbreaking_prefixes(language)
    sentences: list[str] = []
    start = 0
    n = len(body)
    for i, ch in enumerate(body):
        if ch not in SENTENCE_TERMINATORS:
            continue
        if i + 1 < n and not body[i + 1].isspace():
            continue  # mid-token punctuation ("2.5", "U.S.A") or terminator run
        if ch == ".":
            j = i
            while j > start and not body[j - 1].isspace():
                j -= 1
            word = body[j : i + 1]
            if word in prefixes or word.lstrip(_PREFIX_STRIP) in prefixes:
                continue
        segment = body[start : i + 1].strip()
        if segment:
            sentences.append(segment)
        start = i + 1
    tail = body[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def page_sentences(
    page: WikiPage,
    *,
    prefixes: Collection[str] | None = None,
) -> list[Sentence]:
    """All sentences of a page in document order, with section attribution."""
    out: list[Sentence] = []
    ordinal = 0
    for header, body in page.sections:
        for text in split_sentences(body, page.language, prefixes):
            out.append(
                Sentence(
                    text=text,
                    language=page.language,
                    section=header,
                    page_id=page.page_id,
                    entity_id=page.entity_id,
                    ordinal=ordinal,
                )
            )
            ordinal += 1
    return out


# ---------------------------------------------------------------------------
# Pruning filters


def _first_failure(
    sentence: Sentence,
    expected_language: str,
    detector: LanguageDetector,
    tagger: ContentTagger,
) -> RejectReason | None:
    # Fixed rule order (language, length, content) keeps reasons deterministic.
    detected, _ = detector.detect(sentence.text)
    if detected != expected_language:
        return RejectReason.WRONG_LANGUAGE
    if sentence.token_count < MIN_SENTENCE_TOKENS:
        return RejectReason.TOO_SHORT
    if sentence.token_count > MAX_SENTENCE_TOKENS:
        return RejectReason.TOO_LONG
    if not tagger.has_content_word(sentence.text, expected_language):
        return RejectReason.NO_CONTENT_WORD
    return None


def filter_sentences(
    sentences: Iterable[Sentence],
    expected_language: str,
    detector: LanguageDetector,
    tagger: ContentTagger,
) -> FilterReport:
    """Partition sentences into kept and rejected-with-reason."""
    report = FilterReport()
    for sentence in sentences:
        reason = _first_failure(sentence, expected_language, detector, tagger)
        if reason is None:
            report.kept.append(sentence)
        else:
            report.rejected.append((sentence, reason))
    return report
