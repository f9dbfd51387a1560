"""Summary sentence segmentation and inline citation-marker parsing."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import lru_cache

logger = logging.getLogger(__name__)

# Marker grammar: ASCII brackets [3], full-width brackets 【3】, comma lists
# [1,2] (ASCII or full-width comma), and adjacent runs [1][2].
DEFAULT_MARKER_PATTERNS = (
    r"\[(\d{1,3}(?:\s*[,，]\s*\d{1,3})*)\]",
    r"【(\d{1,3}(?:\s*[,，]\s*\d{1,3})*)】",
)
DEFAULT_TERMINATORS = "。！？；…!?."

# Bracketed spans containing a digit that do not parse under the grammar.
_SUSPECT_MARKER = re.compile(r"\[[^\[\]\n]{1,40}\]|【[^【】\n]{1,40}】")


@dataclass(frozen=True)
class MarkerConfig:
    """Citation-marker grammar and sentence-terminator set."""

    patterns: tuple[str, ...] = DEFAULT_MARKER_PATTERNS
    terminators: str = DEFAULT_TERMINATORS


@dataclass(frozen=True)
class Marker:
    start: int
    end: int
    ids: tuple[int, ...]


@dataclass(frozen=True)
class Sentence:
    """One summary sentence with its citations.

    ``text`` has all citation markers removed; ``raw_span`` is the half-open
    character interval of the sentence in the original markup; ``mask`` is the
    citation-mask bit, unset until a mask policy is applied.
    """

    index: int
    text: str
    citations: frozenset[int]
    raw_span: tuple[int, int]
    mask: int | None = None


@dataclass(frozen=True)
class ParsedSummary:
    """Ordered sentences plus the full marker-free summary text."""

    sentences: tuple[Sentence, ...]
    plain_text: str


@lru_cache(maxsize=16)
def _compiled(patterns: tuple[str, ...]) -> tuple[re.Pattern[str], ...]:
    return tuple(re.compile(p) for p in patterns)


def find_markers(markup: str, config: MarkerConfig = MarkerConfig()) -> list[Marker]:
    """All citation markers in the markup, sorted, non-overlapping."""
    found: list[Marker] = []
    for pattern in _compiled(config.patterns):
        for m in pattern.finditer(markup):
            ids = tuple(int(part) for part in re.split(r"[,，]", m.group(1)))
            found.append(Marker(m.start(), m.end(), ids))
    found.sort(key=lambda m: (m.start, m.end))
    kept: list[Marker] = []
    for m in found:
        if kept and m.start < kept[-1].end:
            continue
        kept.append(m)
    return kept


def strip_markers(markup: str, config: MarkerConfig = MarkerConfig()) -> str:
    """Remove every citation marker; all other characters stay in order."""
    out: list[str] = []
    pos = 0
    for m in find_markers(markup, config):
        out.append(markup[pos : m.start])
        pos = m.end
    out.append(markup[pos:])
    return "".join(out)


def _warn_suspect_markers(markup: str, markers: list[Marker]) -> None:
    valid = {(m.start, m.end) for m in markers}
    for m in _SUSPECT_MARKER.finditer(markup):
        span = (m.start(), m.end())
        if span not in valid and any(ch.isdigit() for ch in m.group(0)):
            logger.warning("unparseable citation marker left in text: %r", m.group(0))


def _no_split_period(markup: str, pos: int) -> bool:
    # Abbreviation and decimal guard for ASCII periods: "e.g. word", "3.5".
    nxt = pos + 1
    if nxt < len(markup) and markup[nxt].isdigit():
        return True
    while nxt < len(markup) and markup[nxt].isspace():
        nxt += 1
    return nxt < len(markup) and markup[nxt].islower()


def _sentence_spans(markup: str, markers: list[Marker], terminators: str) -> list[tuple[int, int]]:
    marker_at = {m.start: m for m in markers}
    terms = set(terminators)
    spans: list[tuple[int, int]] = []
    n = len(markup)
    i = 0
    while i < n:
        if markup[i].isspace():
            i += 1
            continue
        start = i
        j = i
        end = None
        while j < n:
            marker = marker_at.get(j)
            if marker is not None:
                j = marker.end
                continue
            ch = markup[j]
            if ch in terms:
                if ch == "." and _no_split_period(markup, j):
                    j += 1
                    continue
                j += 1
                # Absorb terminator runs and trailing markers: citations after
                # the final punctuation belong to the sentence they follow.
                while j < n:
                    marker = marker_at.get(j)
                    if marker is not None:
                        j = marker.end
                    elif markup[j] in terms:
                        j += 1
                    else:
                        break
                end = j
                break
            j += 1
        spans.append((start, end if end is not None else n))
        i = spans[-1][1]
    return spans


def _strip_span(markup: str, start: int, end: int, markers: list[Marker]) -> str:
    out: list[str] = []
    pos = start
    for m in markers:
        if m.start >= end:
            break
        if m.start < start:
            continue
        out.append(markup[pos : m.start])
        pos = m.end
    out.append(markup[pos:end])
    return "".join(out)


def segment_summary(markup: str, config: MarkerConfig = MarkerConfig()) -> ParsedSummary:
    """Split summary markup into sentences and per-sentence citation sets.

    Markers attach to the sentence whose terminal punctuation they follow or
    whose text encloses them; marker-only fragments attach to the neighboring
    sentence with a warning. Duplicate ids collapse within a sentence.
    """
    markers = find_markers(markup, config)
    _warn_suspect_markers(markup, markers)

    sentences: list[Sentence] = []
    pending: set[int] = set()
    for start, end in _sentence_spans(markup, markers, config.terminators):
        text = _strip_span(markup, start, end, markers)
        ids = {i for m in markers if start <= m.start < end for i in m.ids}
        if not text.strip():
            if sentences:
                prev = sentences[-1]
                sentences[-1] = Sentence(
                    index=prev.index,
                    text=prev.text,
                    citations=prev.citations | frozenset(ids),
                    raw_span=prev.raw_span,
                )
                logger.warning("detached citation markers joined to previous sentence")
            else:
                pending |= ids
            continue
        ids |= pending
        pending = set()
        sentences.append(
            Sentence(
                index=len(sentences),
                text=text,
                citations=frozenset(ids),
                raw_span=(start, end),
            )
        )
    if pending:
        logger.warning("citation markers found but summary has no sentences; dropped")

    return ParsedSummary(
        sentences=tuple(sentences),
        plain_text=strip_markers(markup, config),
    )
