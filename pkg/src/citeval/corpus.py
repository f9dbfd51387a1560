"""Dataset loading, corpus statistics, and passage chunking."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from .segmenter import MarkerConfig, segment_summary
from .text import text_length

logger = logging.getLogger(__name__)


class DatasetError(ValueError):
    """Malformed dataset input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Document:
    """One citable source document. ``id`` is the 1-based citation index."""

    id: int
    text: str
    title: str | None = None
    url: str | None = None
    snippet: str | None = None

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError(f"document id must be positive, got {self.id}")
        if not self.text:
            raise ValueError(f"document {self.id} has empty text")


@dataclass(frozen=True)
class Sample:
    """One evaluation unit: query, source documents, cited reference summary."""

    sample_id: str
    query: str
    documents: tuple[Document, ...]
    summary_markup: str
    human_citations: tuple[frozenset[int], ...] | None = None
    human_extraction: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self) -> None:
        if not self.documents:
            raise ValueError(f"sample {self.sample_id} has no documents")
        ids = [d.id for d in self.documents]
        if sorted(ids) != list(range(1, len(ids) + 1)):
            raise ValueError(
                f"sample {self.sample_id}: document ids must be contiguous from 1, got {ids}"
            )
        if self.human_citations is not None:
            valid = set(ids)
            for sent_idx, cited in enumerate(self.human_citations):
                dangling = set(cited) - valid
                if dangling:
                    raise ValueError(
                        f"sample {self.sample_id}: human citations of sentence "
                        f"{sent_idx} reference unknown documents {sorted(dangling)}"
                    )

    @property
    def document_ids(self) -> frozenset[int]:
        return frozenset(d.id for d in self.documents)


@dataclass(frozen=True)
class CorpusStats:
    """Macro corpus statistics after marker stripping and segmentation."""

    sample_count: int
    docs_per_query: float
    doc_length: float
    summary_length: float
    sentences_per_summary: float
    citations_per_sentence: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "sample_count": self.sample_count,
            "docs_per_query": self.docs_per_query,
            "doc_length": self.doc_length,
            "summary_length": self.summary_length,
            "sentences_per_summary": self.sentences_per_summary,
            "citations_per_sentence": self.citations_per_sentence,
        }


def _as_human_citations(raw: Any, line: int) -> tuple[frozenset[int], ...]:
    if not isinstance(raw, list):
        raise DatasetError("human_citations must be a list of id lists", line)
    out = []
    for entry in raw:
        if not isinstance(entry, list) or not all(isinstance(i, int) for i in entry):
            raise DatasetError("human_citations entries must be lists of integers", line)
        out.append(frozenset(entry))
    return tuple(out)


def _record_to_sample(record: dict[str, Any], schema: str, line: int) -> Sample:
    if schema == "canonical":
        id_key, query_key, summary_key, docs_key = "id", "query", "summary", "documents"
        text_keys = ("content",)
    elif schema == "webcites":
        # Tolerant mapping for the released files; field names differ by dump.
        id_key = next((k for k in ("id", "sample_id", "qid") if k in record), "id")
        query_key = next((k for k in ("query", "question") if k in record), "query")
        summary_key = next((k for k in ("summary", "answer", "response") if k in record), "summary")
        docs_key = next((k for k in ("documents", "docs", "search_results") if k in record), "documents")
        text_keys = ("content", "text", "passage", "snippet")
    else:
        raise DatasetError(f"unknown schema {schema!r}", line)

    for key, name in ((query_key, "query"), (docs_key, "documents"), (summary_key, "summary")):
        if key not in record:
            raise DatasetError(f"missing required field {name!r}", line)

    raw_docs = record[docs_key]
    if not isinstance(raw_docs, list) or not raw_docs:
        raise DatasetError("documents must be a non-empty list", line)
    documents = []
    for pos, raw in enumerate(raw_docs, start=1):
        if isinstance(raw, str):
            raw = {"content": raw}
        text = next((raw[k] for k in text_keys if raw.get(k)), None)
        if not text:
            raise DatasetError(f"document {pos} has no usable text field", line)
        documents.append(
            Document(
                id=int(raw.get("id", pos)),
                text=text,
                title=raw.get("title"),
                url=raw.get("url"),
                snippet=raw.get("snippet"),
            )
        )

    human_citations = None
    if record.get("human_citations") is not None:
        human_citations = _as_human_citations(record["human_citations"], line)

    human_extraction = None
    if record.get("human_extraction") is not None:
        human_extraction = tuple(
            tuple(spans) for spans in record["human_extraction"]
        )

    try:
        return Sample(
            sample_id=str(record.get(id_key, f"line-{line}")),
            query=record[query_key],
            documents=tuple(documents),
            summary_markup=record[summary_key],
            human_citations=human_citations,
            human_extraction=human_extraction,
        )
    except ValueError as exc:
        raise DatasetError(str(exc), line) from exc


def load_dataset(
    path: str | Path, schema: str = "canonical", *, strict: bool = True
) -> list[Sample]:
    """Load a JSON-lines dataset into Samples, in file order.

    Malformed records raise :class:`DatasetError` with their line number when
    ``strict``, otherwise they are skipped and logged.
    """
    samples: list[Sample] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
                if not isinstance(record, dict):
                    raise DatasetError("record is not a JSON object", line_no)
                sample = _record_to_sample(record, schema, line_no)
                if sample.sample_id in seen_ids:
                    raise DatasetError(f"duplicate sample_id {sample.sample_id!r}", line_no)
            except json.JSONDecodeError as exc:
                err = DatasetError(f"invalid JSON: {exc.msg}", line_no)
                if strict:
                    raise err from exc
                logger.warning("%s", err)
                continue
            except DatasetError as err:
                if strict:
                    raise
                logger.warning("%s", err)
                continue
            seen_ids.add(sample.sample_id)
            samples.append(sample)
    return samples


def write_dataset(samples: Iterable[Sample], path: str | Path) -> None:
    """Serialize Samples back to canonical JSON lines."""
    with open(path, "w", encoding="utf-8") as handle:
        for sample in samples:
            record: dict[str, Any] = {
                "id": sample.sample_id,
                "query": sample.query,
                "documents": [
                    {
                        k: v
                        for k, v in (
                            ("title", d.title),
                            ("url", d.url),
                            ("snippet", d.snippet),
                            ("content", d.text),
                        )
                        if v is not None
                    }
                    for d in sample.documents
                ],
                "summary": sample.summary_markup,
            }
            if sample.human_citations is not None:
                record["human_citations"] = [sorted(c) for c in sample.human_citations]
            if sample.human_extraction is not None:
                record["human_extraction"] = [list(spans) for spans in sample.human_extraction]
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def corpus_stats(
    samples: list[Sample], marker_config: MarkerConfig = MarkerConfig()
) -> CorpusStats:
    """Compute corpus statistics; deterministic for a fixed marker config."""
    if not samples:
        raise ValueError("corpus_stats requires at least one sample")
    doc_count = 0
    doc_len_total = 0
    summary_len_total = 0
    sentence_count = 0
    citation_count = 0
    for sample in samples:
        doc_count += len(sample.documents)
        for doc in sample.documents:
            doc_len_total += text_length(doc.text)
        parsed = segment_summary(sample.summary_markup, marker_config)
        summary_len_total += text_length(parsed.plain_text)
        sentence_count += len(parsed.sentences)
        citation_count += sum(len(s.citations) for s in parsed.sentences)
    n = len(samples)
    return CorpusStats(
        sample_count=n,
        docs_per_query=doc_count / n,
        doc_length=doc_len_total / doc_count,
        summary_length=summary_len_total / n,
        sentences_per_summary=sentence_count / n,
        citations_per_sentence=citation_count / sentence_count if sentence_count else 0.0,
    )


def _sentence_units(text: str, terminators: str) -> list[str]:
    """Lossless split into sentence units: concatenation equals the input."""
    terms = set(terminators)
    units: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in terms:
            j = i + 1
            while j < n and text[j] in terms:
                j += 1
            units.append(text[start:j])
            start = j
            i = j
        else:
            i += 1
    if start < n:
        units.append(text[start:])
    return units


def chunk_page(
    page_text: str, max_len: int, terminators: str = MarkerConfig().terminators
) -> list[str]:
    """Greedily pack sentences into passages of at most ``max_len`` characters.

    Passages concatenate back to the input exactly. A single sentence longer
    than ``max_len`` is hard-split at ``max_len``.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if not page_text:
        return []
    passages: list[str] = []
    current = ""
    for unit in _sentence_units(page_text, terminators):
        if not current:
            current = unit
        elif len(current) + len(unit) <= max_len:
            current += unit
        else:
            passages.append(current)
            current = unit
        while len(current) > max_len:
            passages.append(current[:max_len])
            current = current[max_len:]
    if current:
        passages.append(current)
    return passages


def chunk_sample(sample: Sample, max_len: int) -> Sample:
    """Re-chunk a sample's documents into passages with fresh contiguous ids.

    Human citation annotations refer to the original document ids and cannot
    be remapped; they are dropped from the result.
    """
    new_docs: list[Document] = []
    for doc in sample.documents:
        for passage in chunk_page(doc.text, max_len):
            new_docs.append(
                Document(
                    id=len(new_docs) + 1,
                    text=passage,
                    title=doc.title,
                    url=doc.url,
                )
            )
    if sample.human_citations is not None:
        logger.warning(
            "sample %s: dropping human citations during re-chunking", sample.sample_id
        )
    return Sample(
        sample_id=sample.sample_id,
        query=sample.query,
        documents=tuple(new_docs),
        summary_markup=sample.summary_markup,
    )
