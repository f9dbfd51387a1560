"""Entailment and claim-split model backends.

The heuristic models are deterministic and dependency-free, used for protocol
tests and local runs. Transformers-backed models load lazily from configured
checkpoints; with greedy decoding they are deterministic within a server
lifetime.
"""

from __future__ import annotations

import re
import unicodedata
from typing import Protocol

from .config import ModelConfig

NEGATORS = {"不", "没", "没有", "无", "非", "未", "别", "not", "no", "never", "cannot"}

_LATIN_WORD = re.compile(r"[a-z0-9]+")


class NliModel(Protocol):
    def predict(self, pairs: list[tuple[str, str]]) -> list[tuple[str, float]]: ...


class ClaimSplitModel(Protocol):
    def split(self, sentences: list[str]) -> list[list[str]]: ...


def content_tokens(text: str) -> set[str]:
    """CJK characters plus lowercased Latin words, punctuation dropped."""
    text = unicodedata.normalize("NFC", text).lower()
    tokens = set(_LATIN_WORD.findall(text))
    for ch in text:
        if "一" <= ch <= "鿿" or "㐀" <= ch <= "䶿":
            tokens.add(ch)
    return tokens


class HeuristicNliModel:
    """Token-containment entailment with a negation-toggle contradiction rule."""

    name = "heuristic-nli"

    def predict(self, pairs: list[tuple[str, str]]) -> list[tuple[str, float]]:
        results = []
        for premise, hypothesis in pairs:
            premise_tokens = content_tokens(premise)
            hypothesis_tokens = content_tokens(hypothesis)
            negators_premise = premise_tokens & NEGATORS
            negators_hypothesis = hypothesis_tokens & NEGATORS
            plain_hypothesis = hypothesis_tokens - NEGATORS
            if not hypothesis_tokens:
                results.append(("neutral", 0.5))
                continue
            coverage = len(plain_hypothesis & premise_tokens) / max(len(plain_hypothesis), 1)
            if plain_hypothesis <= premise_tokens and negators_premise == negators_hypothesis:
                results.append(("entailment", round(min(0.99, 0.9 + coverage / 10), 4)))
            elif plain_hypothesis <= premise_tokens:
                results.append(("contradiction", 0.9))
            else:
                results.append(("neutral", round(coverage / 2, 4)))
        return results


class HeuristicClaimSplitModel:
    """Split clauses on CJK commas and semicolons, re-terminating each clause."""

    name = "heuristic-claimsplit"
    _CLAUSE_SEP = re.compile(r"[，、；,;]")
    _TRAILING_PUNCT = re.compile(r"[。！？!?．.]+$")

    def split(self, sentences: list[str]) -> list[list[str]]:
        results = []
        for sentence in sentences:
            stripped = sentence.strip()
            terminal = "。"
            match = self._TRAILING_PUNCT.search(stripped)
            if match:
                terminal = match.group(0)[0]
                stripped = stripped[: match.start()]
            clauses = [c.strip() for c in self._CLAUSE_SEP.split(stripped) if c.strip()]
            if len(clauses) < 2:
                results.append([sentence])
            else:
                results.append([clause + terminal for clause in clauses])
        return results


class TransformersNliModel:
    """Seq-to-seq NLI checkpoint queried with greedy decoding.

    The prompt template and generated-token label map follow the XNLI
    convention and can be overridden via SIDECAR_NLI_PROMPT and
    SIDECAR_NLI_LABELS (e.g. "0:entailment,1:neutral,2:contradiction").
    """

    def __init__(self, config: ModelConfig, prompt: str | None = None, labels: str | None = None):
        from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

        self.name = config.nli_model
        self.prompt = prompt or "xnli: premise: {premise} hypothesis: {hypothesis}"
        raw = labels or "0:entailment,1:neutral,2:contradiction"
        self.label_map = dict(part.split(":") for part in raw.split(","))
        self.max_seq_len = config.max_seq_len
        self.tokenizer = AutoTokenizer.from_pretrained(config.nli_model)
        self.model = AutoModelForSeq2SeqLM.from_pretrained(config.nli_model).to(config.device)
        self.model.eval()

    def predict(self, pairs: list[tuple[str, str]]) -> list[tuple[str, float]]:
        import torch

        prompts = [self.prompt.format(premise=p, hypothesis=h) for p, h in pairs]
        batch = self.tokenizer(
            prompts,
            padding=True,
            truncation=True,
            max_length=self.max_seq_len,
            return_tensors="pt",
        ).to(self.model.device)
        with torch.no_grad():
            generated = self.model.generate(**batch, max_new_tokens=4, do_sample=False)
        results = []
        for sequence in generated:
            text = self.tokenizer.decode(sequence, skip_special_tokens=True).strip()
            label = self.label_map.get(text[:1], "neutral")
            results.append((label, 0.0))
        return results


class TransformersClaimSplitModel:
    """Seq-to-seq claim-split checkpoint; claims separated by newlines."""

    def __init__(self, config: ModelConfig, separator: str = "\n"):
        from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

        self.name = config.claimsplit_model
        self.separator = separator
        self.max_seq_len = config.max_seq_len
        self.tokenizer = AutoTokenizer.from_pretrained(config.claimsplit_model)
        self.model = AutoModelForSeq2SeqLM.from_pretrained(config.claimsplit_model).to(
            config.device
        )
        self.model.eval()

    def split(self, sentences: list[str]) -> list[list[str]]:
        import torch

        batch = self.tokenizer(
            sentences,
            padding=True,
            truncation=True,
            max_length=self.max_seq_len,
            return_tensors="pt",
        ).to(self.model.device)
        with torch.no_grad():
            generated = self.model.generate(**batch, max_new_tokens=256, do_sample=False)
        results = []
        for sentence, sequence in zip(sentences, generated):
            text = self.tokenizer.decode(sequence, skip_special_tokens=True)
            claims = [c.strip() for c in text.split(self.separator) if c.strip()]
            results.append(claims or [sentence])
        return results


def load_nli_model(config: ModelConfig) -> NliModel:
    if config.nli_model == "heuristic":
        return HeuristicNliModel()
    import os

    return TransformersNliModel(
        config,
        prompt=os.environ.get("SIDECAR_NLI_PROMPT"),
        labels=os.environ.get("SIDECAR_NLI_LABELS"),
    )


def load_claimsplit_model(config: ModelConfig) -> ClaimSplitModel:
    if config.claimsplit_model == "heuristic":
        return HeuristicClaimSplitModel()
    return TransformersClaimSplitModel(config)
