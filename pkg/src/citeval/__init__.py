"""Evaluation engine for query-focused summaries with inline citations.

Parses citation-bearing summaries, verifies sentences and sub-claims against
source documents through pluggable entailment backends, and computes the full
utility and attribution metric suite.
"""

from .backends import (
    CONTRADICTION,
    ENTAILMENT,
    LABELS,
    NEUTRAL,
    BackendError,
    ClaimSet,
    OracleMissError,
    ProtocolError,
    RemoteBackend,
    TableOracle,
    VerificationEngine,
    Verdict,
)
from .corpus import (
    CorpusStats,
    DatasetError,
    Document,
    Sample,
    chunk_page,
    chunk_sample,
    corpus_stats,
    load_dataset,
    write_dataset,
)
from .metrics import (
    CorpusReport,
    EvalConfig,
    EvaluationError,
    SampleReport,
    acs_score,
    aggregate,
    ais_score,
    citation_scores,
    claim_scores,
    claimsplit_quality,
    cohens_kappa,
    evaluate_sample,
    self_bleu,
    summary_length,
)
from .segmenter import (
    MarkerConfig,
    ParsedSummary,
    Sentence,
    segment_summary,
    strip_markers,
)
from .verifier import (
    MaskPolicy,
    SupportLabel,
    apply_mask,
    classify_support,
    dedupe_claims,
    is_attributable,
    oracle_citations,
    predict_citation_mask,
)

__version__ = "0.1.0"

__all__ = [
    "BackendError",
    "ClaimSet",
    "CONTRADICTION",
    "CorpusReport",
    "CorpusStats",
    "DatasetError",
    "Document",
    "ENTAILMENT",
    "EvalConfig",
    "EvaluationError",
    "LABELS",
    "MarkerConfig",
    "MaskPolicy",
    "NEUTRAL",
    "OracleMissError",
    "ParsedSummary",
    "ProtocolError",
    "RemoteBackend",
    "Sample",
    "SampleReport",
    "Sentence",
    "SupportLabel",
    "TableOracle",
    "VerificationEngine",
    "Verdict",
    "acs_score",
    "aggregate",
    "ais_score",
    "apply_mask",
    "chunk_page",
    "chunk_sample",
    "citation_scores",
    "claim_scores",
    "claimsplit_quality",
    "classify_support",
    "cohens_kappa",
    "corpus_stats",
    "dedupe_claims",
    "evaluate_sample",
    "is_attributable",
    "load_dataset",
    "oracle_citations",
    "predict_citation_mask",
    "segment_summary",
    "self_bleu",
    "strip_markers",
    "summary_length",
    "write_dataset",
]
