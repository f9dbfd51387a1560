"""Command-line surface: evaluate, stats, chunk, agreement, claimsplit-quality."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import metrics
from .backends import RemoteBackend, TableOracle, VerificationEngine
from .corpus import DatasetError, Sample, chunk_sample, corpus_stats, load_dataset, write_dataset
from .metrics import EvalConfig, EvaluationError, SampleReport, aggregate, evaluate_sample
from .segmenter import MarkerConfig, segment_summary
from .verifier import MaskPolicy, oracle_citations, predict_citation_mask

logger = logging.getLogger(__name__)

ENDPOINT_ENV = "ATTRIB_EVAL_ENDPOINT"

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2


@dataclass
class RunConfig:
    """Resolved configuration for one evaluation run."""

    dataset: Path
    predictions: Path | None = None
    mask_policy: MaskPolicy = MaskPolicy.AUTO
    oracle: Path | None = None
    endpoint: str | None = None
    schema: str = "canonical"
    max_doc_len: int | None = None
    out: Path | None = None
    jobs: int = 1
    cache: Path | None = None
    marker_config: MarkerConfig = field(default_factory=MarkerConfig)

    def __post_init__(self) -> None:
        if (self.oracle is None) == (self.endpoint is None):
            raise ValueError("configure exactly one backend: --oracle FILE or --endpoint URL")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")

    def build_engine(self) -> VerificationEngine:
        if self.oracle is not None:
            backend = TableOracle.from_file(self.oracle)
            return VerificationEngine(backend, backend, cache_path=self.cache)
        remote = RemoteBackend(self.endpoint)
        return VerificationEngine(remote, remote, cache_path=self.cache)


def _load_config_file(path: str | None) -> dict[str, Any]:
    if not path:
        return {}
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _marker_config(file_config: dict[str, Any]) -> MarkerConfig:
    section = file_config.get("marker", {})
    kwargs: dict[str, Any] = {}
    if "patterns" in section:
        kwargs["patterns"] = tuple(section["patterns"])
    if "terminators" in section:
        kwargs["terminators"] = section["terminators"]
    return MarkerConfig(**kwargs)


def _resolve(flag: Any, file_config: dict[str, Any], key: str, env: str | None = None) -> Any:
    """Flags override the config file, which overrides the environment."""
    if flag is not None:
        return flag
    if key in file_config:
        return file_config[key]
    if env is not None:
        return os.environ.get(env)
    return None


def _load_predictions(path: Path) -> dict[str, str]:
    predictions: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            record = json.loads(raw)
            sample_id = str(record["sample_id"])
            if sample_id in predictions:
                raise DatasetError(f"duplicate prediction for sample {sample_id!r}", line_no)
            predictions[sample_id] = record["summary"]
    return predictions


def _json_dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _emit(payload: dict[str, Any], out: Path | None) -> None:
    text = _json_dumps(payload)
    if out:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")
    print(text)


def run_evaluate(config: RunConfig) -> int:
    """Evaluate predictions against a dataset; write per-sample and corpus reports."""
    engine = config.build_engine()
    samples = load_dataset(config.dataset, config.schema)
    if config.max_doc_len:
        samples = [chunk_sample(s, config.max_doc_len) for s in samples]
    predictions = _load_predictions(config.predictions)

    eval_config = EvalConfig(
        engine=engine,
        mask_policy=config.mask_policy,
        marker_config=config.marker_config,
    )

    def worker(sample: Sample) -> tuple[str, SampleReport | None, str | None]:
        summary = predictions.get(sample.sample_id)
        if summary is None:
            return sample.sample_id, None, "missing prediction"
        try:
            return sample.sample_id, evaluate_sample(sample, summary, eval_config), None
        except EvaluationError as exc:
            return sample.sample_id, None, str(exc)

    ordered = sorted(samples, key=lambda s: s.sample_id)
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(worker, ordered))
    else:
        results = [worker(s) for s in ordered]

    reports = [r for _, r, _ in results if r is not None]
    errors = [
        {"sample_id": sample_id, "error": error}
        for sample_id, _, error in results
        if error is not None
    ]

    out_dir = config.out or Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "samples.jsonl", "w", encoding="utf-8") as handle:
        for report in reports:
            handle.write(_json_dumps(report.to_dict()) + "\n")

    corpus_report = aggregate(reports).to_dict() if reports else None
    status = "ok" if not errors else "partial"
    payload = {
        "status": status,
        "dataset": str(config.dataset),
        "mask_policy": config.mask_policy.value,
        "sample_count": len(samples),
        "evaluated": len(reports),
        "corpus": corpus_report,
        "errors": errors,
    }
    (out_dir / "corpus.json").write_text(_json_dumps(payload) + "\n", encoding="utf-8")
    print(_json_dumps(payload))

    engine.save_cache()
    return EXIT_OK if not errors else EXIT_PARTIAL


def run_stats(dataset: Path, schema: str, marker_config: MarkerConfig, out: Path | None) -> int:
    samples = load_dataset(dataset, schema)
    stats = corpus_stats(samples, marker_config)
    _emit(stats.to_dict(), out)
    return EXIT_OK


def run_chunk(dataset: Path, schema: str, max_doc_len: int, out: Path) -> int:
    samples = load_dataset(dataset, schema)
    chunked = [chunk_sample(s, max_doc_len) for s in samples]
    out.parent.mkdir(parents=True, exist_ok=True)
    write_dataset(chunked, out)
    doc_counts = [len(s.documents) for s in chunked]
    print(
        _json_dumps(
            {
                "samples": len(chunked),
                "max_doc_len": max_doc_len,
                "mean_docs_per_sample": sum(doc_counts) / len(doc_counts) if doc_counts else 0.0,
                "out": str(out),
            }
        )
    )
    return EXIT_OK


def run_agreement(config: RunConfig) -> int:
    """Cohen's kappa between evaluator citation decisions and human citations."""
    engine = config.build_engine()
    samples = load_dataset(config.dataset, config.schema)
    pred_bits: list[int] = []
    human_bits: list[int] = []
    used = 0
    skipped = 0
    for sample in samples:
        if sample.human_citations is None:
            skipped += 1
            continue
        parsed = segment_summary(sample.summary_markup, config.marker_config)
        if len(parsed.sentences) != len(sample.human_citations):
            logger.warning(
                "sample %s: %d sentences but %d human citation entries; skipped",
                sample.sample_id,
                len(parsed.sentences),
                len(sample.human_citations),
            )
            skipped += 1
            continue
        masks = predict_citation_mask(
            parsed, engine, config.mask_policy, human_citations=sample.human_citations
        )
        for sentence, mask in zip(parsed.sentences, masks):
            if mask != 1:
                continue
            reference = oracle_citations(sentence, sample.documents, engine)
            human = sample.human_citations[sentence.index]
            for doc in sample.documents:
                pred_bits.append(1 if doc.id in reference else 0)
                human_bits.append(1 if doc.id in human else 0)
        used += 1
    if not pred_bits:
        print(_json_dumps({"error": "no (sentence, document) pairs to compare"}), file=sys.stderr)
        return EXIT_FATAL
    kappa = metrics.cohens_kappa(pred_bits, human_bits)
    _emit(
        {
            "kappa": kappa,
            "pairs": len(pred_bits),
            "samples_used": used,
            "samples_skipped": skipped,
            "mask_policy": config.mask_policy.value,
        },
        config.out,
    )
    engine.save_cache()
    return EXIT_OK


def run_claimsplit_quality(config: RunConfig) -> int:
    engine = config.build_engine()
    samples = load_dataset(config.dataset, config.schema)
    sentences = [
        sentence.text
        for sample in samples
        for sentence in segment_summary(sample.summary_markup, config.marker_config).sentences
    ]
    quality = metrics.claimsplit_quality(sentences, engine)
    _emit({**quality, "sentences": len(sentences)}, config.out)
    engine.save_cache()
    return EXIT_OK


def _add_backend_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--oracle", type=Path, help="table-oracle fixture JSON file")
    parser.add_argument("--endpoint", help=f"inference sidecar URL (default ${ENDPOINT_ENV})")
    parser.add_argument("--cache", type=Path, help="result cache file, reused across runs")
    parser.add_argument(
        "--mask-policy", choices=[p.value for p in MaskPolicy], help="citation mask policy"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citeval",
        description="Evaluate cited summaries: parsing, verification, and metrics.",
    )
    parser.add_argument("--config", help="JSON config file; flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    evaluate = sub.add_parser("evaluate", help="score system summaries against a dataset")
    evaluate.add_argument("--dataset", type=Path, required=True)
    evaluate.add_argument("--predictions", type=Path, required=True,
                          help="JSONL of {sample_id, summary}")
    evaluate.add_argument("--schema", default=None, choices=["canonical", "webcites"])
    evaluate.add_argument("--max-doc-len", type=int, help="re-chunk documents before evaluating")
    evaluate.add_argument("--out", type=Path, help="report directory")
    evaluate.add_argument("--jobs", type=int, default=None, help="parallel sample evaluations")
    _add_backend_flags(evaluate)

    stats = sub.add_parser("stats", help="corpus statistics for a dataset")
    stats.add_argument("--dataset", type=Path, required=True)
    stats.add_argument("--schema", default=None, choices=["canonical", "webcites"])
    stats.add_argument("--out", type=Path, help="write the JSON report here as well")

    chunk = sub.add_parser("chunk", help="re-chunk documents into citable passages")
    chunk.add_argument("--dataset", type=Path, required=True)
    chunk.add_argument("--schema", default=None, choices=["canonical", "webcites"])
    chunk.add_argument("--max-doc-len", type=int, required=True)
    chunk.add_argument("--out", type=Path, required=True)

    agreement = sub.add_parser(
        "agreement", help="kappa between evaluator and human citation decisions"
    )
    agreement.add_argument("--dataset", type=Path, required=True)
    agreement.add_argument("--schema", default=None, choices=["canonical", "webcites"])
    agreement.add_argument("--out", type=Path)
    _add_backend_flags(agreement)

    claimsplit = sub.add_parser(
        "claimsplit-quality", help="claim-split quality over reference summaries"
    )
    claimsplit.add_argument("--dataset", type=Path, required=True)
    claimsplit.add_argument("--schema", default=None, choices=["canonical", "webcites"])
    claimsplit.add_argument("--out", type=Path)
    _add_backend_flags(claimsplit)

    return parser


def _run_config_from_args(args: argparse.Namespace, file_config: dict[str, Any]) -> RunConfig:
    oracle = _resolve(getattr(args, "oracle", None), file_config, "oracle")
    endpoint = _resolve(getattr(args, "endpoint", None), file_config, "endpoint", env=ENDPOINT_ENV)
    policy = _resolve(getattr(args, "mask_policy", None), file_config, "mask_policy") or "auto"
    return RunConfig(
        dataset=args.dataset,
        predictions=getattr(args, "predictions", None),
        mask_policy=MaskPolicy(policy),
        oracle=Path(oracle) if oracle else None,
        endpoint=endpoint or None,
        schema=_resolve(getattr(args, "schema", None), file_config, "schema") or "canonical",
        max_doc_len=_resolve(getattr(args, "max_doc_len", None), file_config, "max_doc_len"),
        out=getattr(args, "out", None),
        jobs=_resolve(getattr(args, "jobs", None), file_config, "jobs") or 1,
        cache=getattr(args, "cache", None) or file_config.get("cache"),
        marker_config=_marker_config(file_config),
    )


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("CITEVAL_LOG", "WARNING"))
    args = build_parser().parse_args(argv)
    try:
        file_config = _load_config_file(args.config)
        marker_config = _marker_config(file_config)
        if args.command == "stats":
            schema = _resolve(args.schema, file_config, "schema") or "canonical"
            return run_stats(args.dataset, schema, marker_config, args.out)
        if args.command == "chunk":
            schema = _resolve(args.schema, file_config, "schema") or "canonical"
            return run_chunk(args.dataset, schema, args.max_doc_len, args.out)
        config = _run_config_from_args(args, file_config)
        if args.command == "evaluate":
            return run_evaluate(config)
        if args.command == "agreement":
            return run_agreement(config)
        if args.command == "claimsplit-quality":
            return run_claimsplit_quality(config)
        raise ValueError(f"unknown command {args.command!r}")
    except (DatasetError, ValueError, OSError) as exc:
        print(_json_dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
