"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion lines.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from pathlib import Path

import pytest

import reference as ref
from citeval import (
    EvalConfig,
    MaskPolicy,
    TableOracle,
    VerificationEngine,
    claimsplit_quality,
    cohens_kappa,
    corpus_stats,
    evaluate_sample,
    load_dataset,
    segment_summary,
    self_bleu,
)
from citeval.backends import Verdict
from citeval.bleu import sentence_bleu
from citeval.corpus import Document, chunk_page
from citeval.metrics import aggregate, citation_scores
from citeval.segmenter import Sentence, ParsedSummary, strip_markers
from citeval.verifier import apply_mask, dedupe_claims, oracle_citations, predict_citation_mask
from citeval.backends import ClaimSet

from conftest import FIXTURES

TOL = 1e-9


def checked(name):
    def decorator(fn):
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\n[acceptance] {name}: FAIL")
                raise
            print(f"\n[acceptance] {name}: PASS")

        wrapper.__name__ = fn.__name__
        return wrapper

    return decorator


def load_fixture():
    table = ref.load_table(FIXTURES / "oracle.json")
    records = ref.load_jsonl(FIXTURES / "corpus.jsonl")
    predictions = {
        r["sample_id"]: r["summary"] for r in ref.load_jsonl(FIXTURES / "predictions.jsonl")
    }
    oracle = TableOracle.from_file(FIXTURES / "oracle.json")
    engine = VerificationEngine(oracle, oracle)
    samples = load_dataset(FIXTURES / "corpus.jsonl")
    return table, records, predictions, engine, samples


def assert_close(got, want, context):
    if got is None or want is None:
        assert got is want, f"{context}: {got} vs {want}"
        return
    assert abs(got - want) <= TOL, f"{context}: {got} vs {want}"


@checked("formula fidelity vs brute-force reference (tol 1e-9)")
def test_formula_fidelity():
    start = time.monotonic()
    table, records, predictions, engine, samples = load_fixture()
    assert len(samples) >= 10
    total_sentences = sum(len(r["human_citations"]) for r in records)
    assert total_sentences >= 40

    runs = [(predictions, "auto"), (predictions, "default")]
    self_predictions = {r["id"]: r["summary"] for r in records}
    runs += [(self_predictions, "human"), (self_predictions, "auto")]

    for pred_map, policy in runs:
        config = EvalConfig(engine=engine, mask_policy=MaskPolicy(policy))
        for sample, record in zip(samples, records):
            got = evaluate_sample(sample, pred_map[sample.sample_id], config).to_dict()
            want = ref.ref_evaluate_sample(table, record, pred_map[sample.sample_id], policy)
            for key, value in want.items():
                if key == "sample_id":
                    continue
                assert_close(got[key], value, f"{policy}/{sample.sample_id}/{key}")

    sentences = [t for r in records for t, _ in ref.parse_summary(r["summary"])]
    got_quality = claimsplit_quality(sentences, engine)
    want_quality = ref.ref_claimsplit_quality(table, sentences)
    for key, value in want_quality.items():
        assert_close(got_quality[key], value, f"claimsplit/{key}")

    pred_bits, human_bits = ref.ref_agreement(table, records, "auto")
    assert_close(
        cohens_kappa(pred_bits, human_bits),
        ref.ref_kappa(pred_bits, human_bits),
        "kappa",
    )

    elapsed = time.monotonic() - start
    assert elapsed < 5.0, f"formula fidelity took {elapsed:.2f}s"


WEBCITES_DIR = Path(os.environ.get("WEBCITES_DIR", "data/webcites"))
SPLITS = {"train": 5630, "dev": 500, "test": 1000}


@pytest.mark.skipif(
    not all((WEBCITES_DIR / f"{name}.jsonl").exists() for name in SPLITS),
    reason=(
        "released dataset not present: place train/dev/test.jsonl under "
        f"{WEBCITES_DIR} or set WEBCITES_DIR (no network in this environment; "
        "see scripts/fetch_webcites.py)"
    ),
)
@checked("released-dataset statistics (split counts, docs/query, lengths)")
def test_released_dataset_statistics():
    start = time.monotonic()
    all_samples = []
    for name, expected_count in SPLITS.items():
        samples = load_dataset(WEBCITES_DIR / f"{name}.jsonl", schema="webcites")
        assert len(samples) == expected_count, f"{name}: {len(samples)}"
        all_samples.extend(samples)
    stats = corpus_stats(all_samples)
    assert stats.docs_per_query == 5.0
    assert abs(stats.summary_length - 167) / 167 <= 0.02
    assert abs(stats.sentences_per_summary - 4.56) / 4.56 <= 0.05
    assert abs(stats.citations_per_sentence - 1.55) / 1.55 <= 0.05
    assert time.monotonic() - start < 120


@checked("mask-policy behavior (agreement set, default all-ones, precision ordering)")
def test_mask_policy_behavior():
    table, records, predictions, engine, samples = load_fixture()

    # auto agrees with human masks everywhere except the two designed
    # disagreement points
    designed_disagreements = {("s10", 0), ("s12", 3)}
    seen_disagreements = set()
    for sample in samples:
        parsed = segment_summary(sample.summary_markup)
        auto = predict_citation_mask(parsed, engine, MaskPolicy.AUTO)
        human = predict_citation_mask(
            parsed, None, MaskPolicy.HUMAN, human_citations=sample.human_citations
        )
        default = predict_citation_mask(parsed, None, MaskPolicy.DEFAULT)
        assert default == [1] * len(parsed.sentences)
        for i, (a, h) in enumerate(zip(auto, human)):
            if a != h:
                seen_disagreements.add((sample.sample_id, i))
    assert seen_disagreements == designed_disagreements

    # corpus citation precision improves under auto vs default masking
    def corpus_precision(policy):
        config = EvalConfig(engine=engine, mask_policy=policy)
        reports = [
            evaluate_sample(s, predictions[s.sample_id], config) for s in samples
        ]
        return aggregate(reports).means["citation_precision"]

    assert corpus_precision(MaskPolicy.AUTO) > corpus_precision(MaskPolicy.DEFAULT)


@checked("self-BLEU (identical=100, disjoint<1, hand-computed fixture)")
def test_self_bleu_criteria():
    assert self_bleu(segment_summary("同一句话。同一句话。")) == 100.0

    disjoint = self_bleu(segment_summary("桃花盛开于春！枫叶转红在秋？"))
    assert disjoint is not None and disjoint < 1.0

    # three-sentence fixture, precisions derived by hand (see test_bleu.py)
    markup = "西瓜水分充足热量低。西瓜水分非常充足。苹果热量低又好吃。"
    s1 = list("西瓜水分充足热量低。")
    s2 = list("西瓜水分非常充足。")
    s3 = list("苹果热量低又好吃。")
    manual = (
        sentence_bleu(s1, [s2, s3]) + sentence_bleu(s2, [s1, s3]) + sentence_bleu(s3, [s1, s2])
    ) / 3 * 100
    independent = ref.ref_self_bleu([
        "西瓜水分充足热量低。", "西瓜水分非常充足。", "苹果热量低又好吃。"
    ])
    got = self_bleu(segment_summary(markup))
    assert got == pytest.approx(independent, abs=1e-6)
    assert got == pytest.approx(manual, abs=1e-6)


@checked("chunking on 1,000 random pages (round-trip, bound, minimality)")
def test_chunking_random_pages():
    rng = random.Random(20240521)
    alphabet = "天地玄黄宇宙洪荒日月盈昃 abcdef"
    terminators = ["。", "！", "？", "；", ""]
    for _ in range(1000):
        parts = []
        for _ in range(rng.randint(1, 12)):
            body = "".join(rng.choices(alphabet, k=rng.randint(1, 120)))
            parts.append(body + rng.choice(terminators))
        page = "".join(parts)
        max_len = rng.choice([7, 16, 50, 256, 512])
        passages = chunk_page(page, max_len)
        assert "".join(passages) == page
        assert all(len(p) <= max_len for p in passages)
        for left, right in zip(passages, passages[1:]):
            assert len(left) + len(right) > max_len


def random_table(rng, size=6):
    texts = [f"句{i}。" for i in range(size)]
    labels = ["entailment", "contradiction", "neutral"]
    nli = {}
    for p in texts:
        for h in texts:
            if p != h and rng.random() < 0.5:
                nli[(p, h)] = Verdict(rng.choice(labels))
    return texts, TableOracle(nli)


@checked("property suites (>=1000 randomized cases each, oracle backend only)")
def test_property_suites():
    rng = random.Random(987)

    # cache transparency: cached and uncached engines always agree
    cases = 0
    while cases < 1000:
        texts, oracle = random_table(rng)
        cached = VerificationEngine(oracle, oracle)
        uncached = VerificationEngine(oracle, oracle, enable_cache=False)
        for _ in range(10):
            p, h = rng.choice(texts), rng.choice(texts)
            assert cached.classify(p, h) == uncached.classify(p, h)
            cases += 1

    # permutation invariance of oracle citations over document order
    for _ in range(1000):
        texts, oracle = random_table(rng)
        engine = VerificationEngine(oracle, oracle)
        docs = [Document(id=i + 1, text=f"文档{i}。") for i in range(rng.randint(1, 6))]
        nli = {
            (d.text, texts[0]): Verdict(rng.choice(["entailment", "neutral"]))
            for d in docs
        }
        engine = VerificationEngine(TableOracle(nli), TableOracle())
        sentence = Sentence(index=0, text=texts[0], citations=frozenset(), raw_span=(0, 0))
        forward = oracle_citations(sentence, docs, engine)
        shuffled = docs[:]
        rng.shuffle(shuffled)
        assert oracle_citations(sentence, shuffled, engine) == forward

    # idempotence: dedupe_claims and strip_markers
    for _ in range(1000):
        texts, oracle = random_table(rng)
        sym = {}
        for (p, h), verdict in oracle._nli.items():
            if verdict.label == "entailment" and rng.random() < 0.5:
                sym[(p, h)] = Verdict("entailment")
                sym[(h, p)] = Verdict("entailment")
        engine = VerificationEngine(TableOracle(sym), TableOracle())
        claims = ClaimSet(
            source="s", claims=tuple(rng.choice(texts) for _ in range(rng.randint(1, 6)))
        )
        once = dedupe_claims(claims, engine)
        assert dedupe_claims(once, engine).claims == once.claims

        markup = "".join(
            rng.choice(texts) + (f"[{rng.randint(1, 9)}]" if rng.random() < 0.5 else "")
            for _ in range(rng.randint(1, 4))
        )
        stripped = strip_markers(markup)
        assert strip_markers(stripped) == stripped

    # batch equivalence: a batch call equals unit calls, in order
    for _ in range(1000):
        texts, oracle = random_table(rng)
        engine = VerificationEngine(oracle, oracle)
        pairs = [
            (rng.choice(texts), rng.choice(texts)) for _ in range(rng.randint(1, 8))
        ]
        assert engine.classify_batch(pairs) == [engine.classify(p, h) for p, h in pairs]
