"""Per-sample metric computation and corpus aggregation."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .backends import ENTAILMENT, VerificationEngine
from .bleu import sentence_bleu
from .corpus import Document, Sample
from .segmenter import MarkerConfig, ParsedSummary, segment_summary
from .text import text_length, tokenize
from .verifier import (
    MaskPolicy,
    apply_mask,
    concat_premise,
    dedupe_claims,
    is_attributable,
    oracle_citations,
    predict_citation_mask,
)

logger = logging.getLogger(__name__)

#: SampleReport metric fields that aggregate by macro mean.
AGGREGATE_FIELDS = (
    "length",
    "self_bleu",
    "claim_precision",
    "claim_recall",
    "claim_f1",
    "citation_precision",
    "citation_recall",
    "citation_f1",
    "ais",
    "acs",
    "masked_sentence_count",
)


class EvaluationError(RuntimeError):
    """Evaluation of one sample failed; message carries the sample id."""


def harmonic_mean(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class SampleReport:
    """All metrics for one evaluated summary.

    Attribution fields are None exactly when no sentence carries citation
    mask 1; self_bleu is None for summaries of fewer than two sentences.
    """

    sample_id: str
    length: int
    self_bleu: float | None
    claim_precision: float
    claim_recall: float
    claim_f1: float
    citation_precision: float | None
    citation_recall: float | None
    citation_f1: float | None
    ais: float | None
    acs: float | None
    masked_sentence_count: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "sample_id": self.sample_id,
            **{name: getattr(self, name) for name in AGGREGATE_FIELDS},
        }


@dataclass(frozen=True)
class CorpusReport:
    """Macro means over per-sample reports, with null-exclusion counts."""

    sample_count: int
    means: dict[str, float | None]
    excluded: dict[str, int]
    claim_f1_from_means: float
    citation_f1_from_means: float | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "sample_count": self.sample_count,
            "means": self.means,
            "excluded": self.excluded,
            "claim_f1_from_means": self.claim_f1_from_means,
            "citation_f1_from_means": self.citation_f1_from_means,
        }


@dataclass
class EvalConfig:
    """Evaluation knobs: backends, mask policy, marker grammar."""

    engine: VerificationEngine
    mask_policy: MaskPolicy = MaskPolicy.AUTO
    marker_config: MarkerConfig = field(default_factory=MarkerConfig)


def summary_length(parsed: ParsedSummary) -> int:
    """Marker-free summary length: characters for CJK, words for Latin text."""
    return text_length(parsed.plain_text)


def self_bleu(parsed: ParsedSummary) -> float | None:
    """Mean BLEU-4 of each sentence against its siblings, in [0, 100].

    None for summaries with fewer than two sentences. Lower is better.
    """
    sentences = parsed.sentences
    if len(sentences) < 2:
        return None
    tokens = [tokenize(s.text) for s in sentences]
    scores = []
    for i, candidate in enumerate(tokens):
        references = [t for j, t in enumerate(tokens) if j != i]
        scores.append(sentence_bleu(candidate, references))
    return 100.0 * sum(scores) / len(scores)


def _entailed_fraction(
    premise: str, claims: Sequence[str], engine: VerificationEngine
) -> float:
    if not claims:
        return 0.0
    hits = sum(
        1 for claim in claims if engine.classify(premise, claim).label == ENTAILMENT
    )
    return hits / len(claims)


def claim_scores(
    system: ParsedSummary, reference: ParsedSummary, engine: VerificationEngine
) -> dict[str, float]:
    """Claim precision/recall/F1 between a system and a reference summary.

    Precision: fraction of system sub-claims entailed by the reference text.
    Recall: fraction of reference sub-claims entailed by the system text.
    """
    system_claims = [c for s in system.sentences for c in engine.split(s.text).claims]
    reference_claims = [
        c for s in reference.sentences for c in engine.split(s.text).claims
    ]
    precision = _entailed_fraction(reference.plain_text, system_claims, engine)
    recall = _entailed_fraction(system.plain_text, reference_claims, engine)
    return {
        "precision": precision,
        "recall": recall,
        "f1": harmonic_mean(precision, recall),
    }


def _require_masks(parsed: ParsedSummary) -> list:
    if any(s.mask is None for s in parsed.sentences):
        raise ValueError("citation mask not set; apply a mask policy first")
    return [s for s in parsed.sentences if s.mask == 1]


def effective_citations(parsed: ParsedSummary, index: int) -> frozenset[int]:
    """Citations of a sentence, falling back to the nearest subsequent
    sentence with non-empty citations."""
    sentences = parsed.sentences
    if sentences[index].citations:
        return sentences[index].citations
    for later in sentences[index + 1 :]:
        if later.citations:
            return later.citations
    return frozenset()


def citation_scores(
    parsed: ParsedSummary, documents: Sequence[Document], engine: VerificationEngine
) -> dict[str, float] | None:
    """Citation precision/recall/F1 over sentences with mask 1.

    Per sentence, precision and recall compare the effective predicted
    citations with the evaluator's oracle citations; empty effective citations
    score zero precision, an empty oracle set scores zero recall. Sentence
    scores average into summary scores; F1 is their harmonic mean. None when
    no sentence is masked.
    """
    masked = _require_masks(parsed)
    if not masked:
        return None
    valid_ids = {d.id for d in documents}
    precisions = []
    recalls = []
    for sentence in masked:
        effective = effective_citations(parsed, sentence.index)
        invalid = effective - valid_ids
        if invalid:
            logger.warning(
                "sentence %d cites unknown documents %s", sentence.index, sorted(invalid)
            )
        reference = oracle_citations(sentence, documents, engine)
        overlap = len(effective & reference)
        precisions.append(overlap / len(effective) if effective else 0.0)
        recalls.append(overlap / len(reference) if reference else 0.0)
    precision = sum(precisions) / len(precisions)
    recall = sum(recalls) / len(recalls)
    return {
        "precision": precision,
        "recall": recall,
        "f1": harmonic_mean(precision, recall),
    }


def ais_score(
    parsed: ParsedSummary, documents: Sequence[Document], engine: VerificationEngine
) -> float | None:
    """Fraction of masked sentences fully supported by their own citations."""
    masked = _require_masks(parsed)
    if not masked:
        return None
    scores = [is_attributable(s, s.citations, documents, engine) for s in masked]
    return sum(scores) / len(scores)


def acs_score(
    parsed: ParsedSummary, documents: Sequence[Document], engine: VerificationEngine
) -> float | None:
    """AIS computed with the evaluator's oracle citations instead of the
    model's own, isolating groundedness from citation errors."""
    masked = _require_masks(parsed)
    if not masked:
        return None
    scores = [
        is_attributable(s, oracle_citations(s, documents, engine), documents, engine)
        for s in masked
    ]
    return sum(scores) / len(scores)


def claimsplit_quality(
    sentences: Iterable[str], engine: VerificationEngine
) -> dict[str, float]:
    """Claim-split quality: redundancy, #splits, correctness, completeness.

    All four are macro averages over sentences. Redundancy is the removed
    fraction under keep-first de-duplication; #splits counts the surviving
    claims; correctness checks each raw claim against its source sentence;
    completeness checks the source against the concatenated claims.
    """
    redundancy = []
    n_splits = []
    correctness = []
    completeness = []
    for sentence in sentences:
        claims = engine.split(sentence)
        deduped = dedupe_claims(claims, engine)
        redundancy.append((len(claims.claims) - len(deduped.claims)) / len(claims.claims))
        n_splits.append(len(deduped.claims))
        correctness.append(_entailed_fraction(sentence, claims.claims, engine))
        joined = concat_premise(claims.claims)
        completeness.append(
            1.0 if engine.classify(joined, sentence).label == ENTAILMENT else 0.0
        )
    if not redundancy:
        raise ValueError("claimsplit_quality requires at least one sentence")
    count = len(redundancy)
    return {
        "redundancy": sum(redundancy) / count,
        "n_splits": sum(n_splits) / count,
        "correctness": sum(correctness) / count,
        "completeness": sum(completeness) / count,
    }


def cohens_kappa(pred: Sequence[int], human: Sequence[int]) -> float:
    """Cohen's kappa between two binary decision vectors."""
    if len(pred) != len(human):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(human)}")
    if not pred:
        raise ValueError("kappa requires at least one decision pair")
    n = len(pred)
    observed = sum(1 for p, h in zip(pred, human) if bool(p) == bool(h)) / n
    pred_pos = sum(1 for p in pred if p) / n
    human_pos = sum(1 for h in human if h) / n
    expected = pred_pos * human_pos + (1 - pred_pos) * (1 - human_pos)
    if expected == 1.0:
        return 1.0 if observed == 1.0 else 0.0
    return (observed - expected) / (1 - expected)


def evaluate_sample(
    sample: Sample, system_summary_markup: str, config: EvalConfig
) -> SampleReport:
    """Parse, mask, and score one system summary against its sample."""
    try:
        return _evaluate_sample(sample, system_summary_markup, config)
    except Exception as exc:
        raise EvaluationError(f"sample {sample.sample_id}: {exc}") from exc


def _evaluate_sample(
    sample: Sample, system_summary_markup: str, config: EvalConfig
) -> SampleReport:
    engine = config.engine
    system = segment_summary(system_summary_markup, config.marker_config)
    reference = segment_summary(sample.summary_markup, config.marker_config)

    if system.sentences:
        masks = predict_citation_mask(
            system,
            engine,
            config.mask_policy,
            human_citations=sample.human_citations,
        )
    else:
        masks = []
    masked_system = apply_mask(system, masks)

    claims = claim_scores(system, reference, engine)
    citations = citation_scores(masked_system, sample.documents, engine)
    return SampleReport(
        sample_id=sample.sample_id,
        length=summary_length(system),
        self_bleu=self_bleu(system),
        claim_precision=claims["precision"],
        claim_recall=claims["recall"],
        claim_f1=claims["f1"],
        citation_precision=citations["precision"] if citations else None,
        citation_recall=citations["recall"] if citations else None,
        citation_f1=citations["f1"] if citations else None,
        ais=ais_score(masked_system, sample.documents, engine),
        acs=acs_score(masked_system, sample.documents, engine),
        masked_sentence_count=sum(masks),
    )


def aggregate(reports: Sequence[SampleReport]) -> CorpusReport:
    """Macro-average reports field-wise over non-null entries."""
    if not reports:
        raise ValueError("aggregate requires at least one report")
    means: dict[str, float | None] = {}
    excluded: dict[str, int] = {}
    for name in AGGREGATE_FIELDS:
        values = [getattr(r, name) for r in reports if getattr(r, name) is not None]
        excluded[name] = len(reports) - len(values)
        # fsum keeps the mean exactly permutation-invariant
        means[name] = math.fsum(values) / len(values) if values else None

    claim_f1_from_means = harmonic_mean(
        means["claim_precision"] or 0.0, means["claim_recall"] or 0.0
    )
    citation_f1_from_means = None
    if means["citation_precision"] is not None and means["citation_recall"] is not None:
        citation_f1_from_means = harmonic_mean(
            means["citation_precision"], means["citation_recall"]
        )
    return CorpusReport(
        sample_count=len(reports),
        means=means,
        excluded=excluded,
        claim_f1_from_means=claim_f1_from_means,
        citation_f1_from_means=citation_f1_from_means,
    )
