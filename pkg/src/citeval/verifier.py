"""Verification logic: support classification, oracle citations, attributability,
citation-mask prediction, and claim de-duplication."""

from __future__ import annotations

from dataclasses import replace
from enum import Enum
from typing import Iterable, Sequence

from .backends import CONTRADICTION, ENTAILMENT, ClaimSet, VerificationEngine
from .corpus import Document
from .segmenter import ParsedSummary, Sentence

# Cited documents are concatenated in ascending id order with this separator
# when forming an entailment premise.
PREMISE_SEPARATOR = "\n"


class SupportLabel(Enum):
    FULL = "full"
    PARTIAL = "partial"
    CONTRADICTION = "contradiction"
    NONE = "none"


class MaskPolicy(Enum):
    DEFAULT = "default"
    AUTO = "auto"
    HUMAN = "human"


def concat_premise(texts: Iterable[str]) -> str:
    return PREMISE_SEPARATOR.join(texts)


def classify_support(
    sentence: Sentence, document: Document, engine: VerificationEngine
) -> SupportLabel:
    """Classify how one document supports a sentence.

    Full support is sentence-level entailment; a sentence-level contradiction
    is terminal and blocks partial support; otherwise the document partially
    supports the sentence when it entails at least one of its sub-claims.
    """
    verdict = engine.classify(document.text, sentence.text)
    if verdict.label == ENTAILMENT:
        return SupportLabel.FULL
    if verdict.label == CONTRADICTION:
        return SupportLabel.CONTRADICTION
    for claim in engine.split(sentence.text).claims:
        if engine.classify(document.text, claim).label == ENTAILMENT:
            return SupportLabel.PARTIAL
    return SupportLabel.NONE


def oracle_citations(
    sentence: Sentence, documents: Sequence[Document], engine: VerificationEngine
) -> frozenset[int]:
    """Ids of all documents that fully or partially support the sentence."""
    return frozenset(
        doc.id
        for doc in documents
        if classify_support(sentence, doc, engine)
        in (SupportLabel.FULL, SupportLabel.PARTIAL)
    )


def is_attributable(
    sentence: Sentence,
    cited: Iterable[int],
    documents: Sequence[Document],
    engine: VerificationEngine,
) -> int:
    """1 if the cited documents jointly fully support the sentence, else 0.

    Uncited sentences score 0. A contradiction from any individual citation is
    disqualifying. Otherwise the sentence must be entailed by the
    concatenation of its citations, or every one of its sub-claims must be.
    """
    cited_ids = sorted(set(cited))
    if not cited_ids:
        return 0
    by_id = {doc.id: doc for doc in documents}
    cited_docs = [by_id[i] for i in cited_ids if i in by_id]
    if not cited_docs:
        return 0
    for doc in cited_docs:
        if engine.classify(doc.text, sentence.text).label == CONTRADICTION:
            return 0
    premise = concat_premise(doc.text for doc in cited_docs)
    if engine.classify(premise, sentence.text).label == ENTAILMENT:
        return 1
    claims = engine.split(sentence.text).claims
    if all(engine.classify(premise, claim).label == ENTAILMENT for claim in claims):
        return 1
    return 0


def predict_citation_mask(
    parsed: ParsedSummary,
    engine: VerificationEngine | None,
    policy: MaskPolicy,
    human_citations: Sequence[frozenset[int]] | None = None,
) -> list[int]:
    """Citation-mask bits for every sentence under the given policy.

    default marks every sentence; human marks sentences with non-empty human
    citations; auto marks a sentence unless it is uncited and entailed by the
    other cited sentences (the introductory/concluding case). When no other
    sentence carries citations the sentence is always marked.
    """
    sentences = parsed.sentences
    if policy is MaskPolicy.DEFAULT:
        return [1] * len(sentences)
    if policy is MaskPolicy.HUMAN:
        if human_citations is None:
            raise ValueError("human mask policy requires human citation annotations")
        if len(human_citations) != len(sentences):
            raise ValueError(
                f"human citations cover {len(human_citations)} sentences, "
                f"summary has {len(sentences)}"
            )
        return [1 if cited else 0 for cited in human_citations]
    if policy is not MaskPolicy.AUTO:
        raise ValueError(f"unknown mask policy {policy!r}")
    if engine is None:
        raise ValueError("auto mask policy requires a verification engine")

    masks: list[int] = []
    for sentence in sentences:
        if sentence.citations:
            masks.append(1)
            continue
        rest = [s.text for s in sentences if s.index != sentence.index and s.citations]
        if not rest:
            masks.append(1)
            continue
        verdict = engine.classify(concat_premise(rest), sentence.text)
        masks.append(0 if verdict.label == ENTAILMENT else 1)
    return masks


def apply_mask(parsed: ParsedSummary, masks: Sequence[int]) -> ParsedSummary:
    """ParsedSummary with mask bits set on every sentence."""
    if len(masks) != len(parsed.sentences):
        raise ValueError("mask length does not match sentence count")
    return ParsedSummary(
        sentences=tuple(
            replace(s, mask=int(m)) for s, m in zip(parsed.sentences, masks)
        ),
        plain_text=parsed.plain_text,
    )


def dedupe_claims(claims: ClaimSet, engine: VerificationEngine) -> ClaimSet:
    """Drop claims mutually entailed by an earlier kept claim (keep-first)."""
    kept: list[str] = []
    for claim in claims.claims:
        redundant = any(
            engine.classify(prev, claim).label == ENTAILMENT
            and engine.classify(claim, prev).label == ENTAILMENT
            for prev in kept
        )
        if not redundant:
            kept.append(claim)
    return ClaimSet(source=claims.source, claims=tuple(kept))
