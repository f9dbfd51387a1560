from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from citeval.backends import ClaimSet, TableOracle, VerificationEngine, Verdict
from citeval.corpus import Document
from citeval.segmenter import ParsedSummary, Sentence, segment_summary
from citeval.verifier import (
    MaskPolicy,
    SupportLabel,
    apply_mask,
    classify_support,
    concat_premise,
    dedupe_claims,
    is_attributable,
    oracle_citations,
    predict_citation_mask,
)


def sent(text, citations=(), index=0):
    return Sentence(index=index, text=text, citations=frozenset(citations), raw_span=(0, 0))


def engine_for(nli=None, claims=None, **kwargs):
    oracle = TableOracle(
        {k: Verdict(v) for k, v in (nli or {}).items()},
        {s: tuple(c) for s, c in (claims or {}).items()},
        **kwargs,
    )
    return VerificationEngine(oracle, oracle)


DOC = Document(id=1, text="文档内容。")
S = "待验证的句子。"
C1, C2 = "子断言一。", "子断言二。"


# --- classify_support ---------------------------------------------------------

def test_full_support_from_sentence_entailment():
    engine = engine_for({(DOC.text, S): "entailment"})
    assert classify_support(sent(S), DOC, engine) is SupportLabel.FULL


def test_partial_support_from_a_sub_claim():
    engine = engine_for({(DOC.text, C2): "entailment"}, {S: [C1, C2]})
    assert classify_support(sent(S), DOC, engine) is SupportLabel.PARTIAL


def test_contradiction_blocks_partial_support():
    engine = engine_for(
        {(DOC.text, S): "contradiction", (DOC.text, C1): "entailment"}, {S: [C1, C2]}
    )
    assert classify_support(sent(S), DOC, engine) is SupportLabel.CONTRADICTION


def test_no_support_defaults_none():
    assert classify_support(sent(S), DOC, engine_for()) is SupportLabel.NONE


def test_support_rule_truth_table():
    # brute force over every sentence verdict x claim verdict combination
    def expected(sentence_label, claim_labels):
        if sentence_label == "entailment":
            return SupportLabel.FULL
        if sentence_label == "contradiction":
            return SupportLabel.CONTRADICTION
        if any(label == "entailment" for label in claim_labels):
            return SupportLabel.PARTIAL
        return SupportLabel.NONE

    labels = ("entailment", "contradiction", "neutral")
    for sentence_label, ca, cb in itertools.product(labels, labels, labels):
        engine = engine_for(
            {(DOC.text, S): sentence_label, (DOC.text, C1): ca, (DOC.text, C2): cb},
            {S: [C1, C2]},
        )
        assert classify_support(sent(S), DOC, engine) is expected(sentence_label, (ca, cb))


# --- oracle_citations ----------------------------------------------------------

DOCS = tuple(Document(id=i, text=f"文档{i}的内容。") for i in range(1, 6))


def test_oracle_citations_collects_full_and_partial():
    engine = engine_for(
        {
            (DOCS[0].text, S): "entailment",
            (DOCS[2].text, C1): "entailment",
        },
        {S: [C1, C2]},
    )
    assert oracle_citations(sent(S), DOCS[:3], engine) == {1, 3}


def test_oracle_citations_empty_when_unsupported():
    assert oracle_citations(sent(S), DOCS, engine_for()) == frozenset()


def test_oracle_citations_total_case():
    engine = engine_for({(d.text, S): "entailment" for d in DOCS})
    assert oracle_citations(sent(S), DOCS, engine) == {1, 2, 3, 4, 5}


def test_oracle_citations_permutation_invariant():
    engine = engine_for(
        {(DOCS[1].text, S): "entailment", (DOCS[4].text, S): "entailment"}
    )
    shuffled = list(DOCS)
    random.Random(7).shuffle(shuffled)
    assert oracle_citations(sent(S), shuffled, engine) == oracle_citations(
        sent(S), DOCS, engine
    )


# --- is_attributable ------------------------------------------------------------

def test_uncited_sentence_is_not_attributable():
    assert is_attributable(sent(S), set(), DOCS, engine_for()) == 0


def test_attributable_via_sentence_entailment():
    premise = concat_premise([DOCS[0].text, DOCS[1].text])
    engine = engine_for({(premise, S): "entailment"})
    assert is_attributable(sent(S), {1, 2}, DOCS, engine) == 1


def test_attributable_requires_every_sub_claim():
    premise = DOCS[0].text
    partial = engine_for({(premise, C1): "entailment"}, {S: [C1, C2]})
    assert is_attributable(sent(S), {1}, DOCS, partial) == 0
    complete = engine_for(
        {(premise, C1): "entailment", (premise, C2): "entailment"}, {S: [C1, C2]}
    )
    assert is_attributable(sent(S), {1}, DOCS, complete) == 1


def test_individual_contradiction_disqualifies():
    premise = concat_premise([DOCS[0].text, DOCS[1].text])
    engine = engine_for(
        {(DOCS[1].text, S): "contradiction", (premise, S): "entailment"}
    )
    assert is_attributable(sent(S), {1, 2}, DOCS, engine) == 0


def test_only_invalid_citations_score_zero():
    assert is_attributable(sent(S), {9}, DOCS[:3], engine_for()) == 0


def test_cited_documents_concatenate_in_id_order():
    premise = concat_premise([DOCS[0].text, DOCS[2].text])
    engine = engine_for({(premise, S): "entailment"})
    assert is_attributable(sent(S), {3, 1}, DOCS, engine) == 1


def test_attributable_monotone_under_added_entailing_document():
    rng = random.Random(11)
    labels = ("entailment", "neutral")
    for _ in range(200):
        base_docs = DOCS[:3]
        nli = {}
        for d in base_docs:
            nli[(d.text, S)] = rng.choice(labels)
        cited = {d.id for d in base_docs if rng.random() < 0.7}
        extra = DOCS[3]
        nli[(extra.text, S)] = "entailment"
        # joint premises entail whenever any individual member does
        for r in range(1, 5):
            for combo in itertools.combinations(DOCS[:4], r):
                if any(nli.get((d.text, S)) == "entailment" for d in combo):
                    nli[(concat_premise(d.text for d in combo), S)] = "entailment"
        engine = engine_for(nli)
        before = is_attributable(sent(S), cited, DOCS[:4], engine)
        after = is_attributable(sent(S), cited | {extra.id}, DOCS[:4], engine)
        if before == 1:
            assert after == 1


# --- predict_citation_mask -------------------------------------------------------

def parsed_of(*sentences):
    fixed = tuple(
        Sentence(index=i, text=s.text, citations=s.citations, raw_span=s.raw_span)
        for i, s in enumerate(sentences)
    )
    return ParsedSummary(sentences=fixed, plain_text="".join(s.text for s in fixed))


def test_default_policy_marks_everything():
    parsed = parsed_of(sent("甲。"), sent("乙。", {1}))
    assert predict_citation_mask(parsed, None, MaskPolicy.DEFAULT) == [1, 1]


def test_human_policy_follows_annotations():
    parsed = parsed_of(sent("甲。"), sent("乙。"), sent("丙。"))
    human = [frozenset(), frozenset({1}), frozenset()]
    assert predict_citation_mask(parsed, None, MaskPolicy.HUMAN, human) == [0, 1, 0]


def test_human_policy_requires_annotations():
    parsed = parsed_of(sent("甲。"))
    with pytest.raises(ValueError, match="human"):
        predict_citation_mask(parsed, None, MaskPolicy.HUMAN)
    with pytest.raises(ValueError, match="cover"):
        predict_citation_mask(parsed, None, MaskPolicy.HUMAN, [frozenset(), frozenset()])


def test_auto_cited_sentence_is_always_masked():
    parsed = parsed_of(sent("甲。", {2}), sent("乙。", {1}))
    assert predict_citation_mask(parsed, engine_for(), MaskPolicy.AUTO) == [1, 1]


def test_auto_concluding_sentence_entailed_by_cited_rest():
    intro, body1, body2 = sent("总之都好。"), sent("甲好。", {1}), sent("乙好。", {2})
    parsed = parsed_of(body1, body2, intro)
    engine = engine_for({(concat_premise(["甲好。", "乙好。"]), "总之都好。"): "entailment"})
    assert predict_citation_mask(parsed, engine, MaskPolicy.AUTO) == [1, 1, 0]


def test_auto_uncited_not_entailed_stays_masked():
    parsed = parsed_of(sent("甲好。", {1}), sent("别的话。"))
    assert predict_citation_mask(parsed, engine_for(), MaskPolicy.AUTO) == [1, 1]


def test_auto_all_uncited_summary_masks_everything():
    parsed = parsed_of(sent("甲。"), sent("乙。"), sent("丙。"))
    assert predict_citation_mask(parsed, engine_for(), MaskPolicy.AUTO) == [1, 1, 1]


def test_auto_excludes_uncited_sentences_from_premise():
    # the uncited-but-entailing sibling must not contribute to the premise
    a, b = sent("甲某乙某。"), sent("甲某乙某概述。")
    parsed = parsed_of(a, b)
    engine = engine_for({("甲某乙某。", "甲某乙某概述。"): "entailment"})
    assert predict_citation_mask(parsed, engine, MaskPolicy.AUTO) == [1, 1]


def test_apply_mask_sets_bits():
    parsed = parsed_of(sent("甲。"), sent("乙。"))
    masked = apply_mask(parsed, [1, 0])
    assert [s.mask for s in masked.sentences] == [1, 0]
    with pytest.raises(ValueError):
        apply_mask(parsed, [1])


# --- dedupe_claims ---------------------------------------------------------------

def mutual(a, b):
    return {(a, b): "entailment", (b, a): "entailment"}


def test_dedupe_keeps_first_of_redundant_pair():
    engine = engine_for(mutual("c1。", "c2。"))
    deduped = dedupe_claims(ClaimSet(source="s", claims=("c1。", "c2。", "c3。")), engine)
    assert deduped.claims == ("c1。", "c3。")


def test_dedupe_identity_on_distinct_claims():
    claims = ClaimSet(source="s", claims=("c1。", "c2。", "c3。"))
    assert dedupe_claims(claims, engine_for()).claims == claims.claims


def test_dedupe_four_element_closure():
    nli = {**mutual("a。", "a2。"), **mutual("b。", "b2。")}
    engine = engine_for(nli)
    deduped = dedupe_claims(ClaimSet(source="s", claims=("a。", "b。", "a2。", "b2。")), engine)
    assert deduped.claims == ("a。", "b。")


def test_one_directional_entailment_is_not_redundant():
    engine = engine_for({("具体。", "概括。"): "entailment"})
    claims = ClaimSet(source="s", claims=("具体。", "概括。"))
    assert dedupe_claims(claims, engine).claims == claims.claims


@given(st.lists(st.sampled_from(["a。", "b。", "c。", "d。"]), min_size=1, max_size=6))
def test_dedupe_idempotent_and_sound(claims):
    engine = engine_for({**mutual("a。", "b。"), **mutual("c。", "d。")})
    claim_set = ClaimSet(source="s", claims=tuple(claims))
    once = dedupe_claims(claim_set, engine)
    assert dedupe_claims(once, engine).claims == once.claims
    # no two kept claims mutually entail
    for x, y in itertools.combinations(once.claims, 2):
        both = (
            engine.classify(x, y).label == "entailment"
            and engine.classify(y, x).label == "entailment"
        )
        assert not both
    # every removed claim has an earlier kept claim mutually entailing it
    kept = list(once.claims)
    for claim in claims:
        if claim in kept:
            continue
        assert any(
            engine.classify(k, claim).label == "entailment"
            and engine.classify(claim, k).label == "entailment"
            for k in kept
        )
