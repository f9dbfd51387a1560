"""Entailment and claim-split backends: table oracle, remote client, caching engine."""

from __future__ import annotations

import hashlib
import json
import logging
import threading
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Protocol, runtime_checkable

import requests

logger = logging.getLogger(__name__)

ENTAILMENT = "entailment"
CONTRADICTION = "contradiction"
NEUTRAL = "neutral"
LABELS = frozenset({ENTAILMENT, CONTRADICTION, NEUTRAL})


class BackendError(RuntimeError):
    """Backend could not produce a result."""


class ProtocolError(BackendError):
    """Remote response violated the wire protocol."""


class OracleMissError(BackendError):
    """Strict table oracle queried with an unknown input."""


@dataclass(frozen=True)
class Verdict:
    """Entailment verdict over a (premise, hypothesis) pair."""

    label: str
    score: float | None = None

    def __post_init__(self) -> None:
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {sorted(LABELS)}, got {self.label!r}")
        if self.score is not None and not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be in [0, 1], got {self.score}")


@dataclass(frozen=True)
class ClaimSet:
    """Sub-claims extracted from a sentence; never empty."""

    source: str
    claims: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.claims:
            raise ValueError("claim set must not be empty")
        if any(not c for c in self.claims):
            raise ValueError("claims must be non-empty strings")


@runtime_checkable
class NliBackend(Protocol):
    def classify(self, premise: str, hypothesis: str) -> Verdict: ...


@runtime_checkable
class ClaimSplitBackend(Protocol):
    def split(self, sentence: str) -> ClaimSet: ...


def normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text).strip()


class TableOracle:
    """Deterministic fixture-backed backend for both contracts.

    Keys are NFC-normalized, trimmed strings. Reflexive entailment (premise
    equals hypothesis) is built in. In lenient mode unknown NLI pairs are
    neutral and unknown sentences split to themselves; strict mode raises.
    """

    def __init__(
        self,
        nli_table: dict[tuple[str, str], Verdict] | None = None,
        claim_table: dict[str, tuple[str, ...]] | None = None,
        *,
        strict: bool = False,
    ):
        self._nli = {
            (normalize(p), normalize(h)): v for (p, h), v in (nli_table or {}).items()
        }
        self._claims = {normalize(s): tuple(c) for s, c in (claim_table or {}).items()}
        self.strict = strict

    @classmethod
    def from_dict(cls, payload: dict[str, Any], *, strict: bool = False) -> "TableOracle":
        nli = {}
        for entry in payload.get("nli", []):
            nli[(entry["premise"], entry["hypothesis"])] = Verdict(
                label=entry["label"], score=entry.get("score")
            )
        claims = {
            entry["sentence"]: tuple(entry["claims"]) for entry in payload.get("claims", [])
        }
        return cls(nli, claims, strict=strict)

    @classmethod
    def from_file(cls, path: str | Path, *, strict: bool = False) -> "TableOracle":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle), strict=strict)

    def classify(self, premise: str, hypothesis: str) -> Verdict:
        key = (normalize(premise), normalize(hypothesis))
        if key[0] and key[0] == key[1]:
            return Verdict(ENTAILMENT, score=1.0)
        verdict = self._nli.get(key)
        if verdict is not None:
            return verdict
        if self.strict:
            raise OracleMissError(f"no NLI fixture for pair {key!r}")
        return Verdict(NEUTRAL)

    def split(self, sentence: str) -> ClaimSet:
        claims = self._claims.get(normalize(sentence))
        if claims:
            return ClaimSet(source=sentence, claims=claims)
        if self.strict:
            raise OracleMissError(f"no claim-split fixture for {sentence!r}")
        logger.warning("no claim-split fixture for %r; using the sentence itself", sentence)
        return ClaimSet(source=sentence, claims=(sentence,))


class RemoteBackend:
    """HTTP client for an inference sidecar speaking the shared wire protocol."""

    def __init__(
        self,
        endpoint: str,
        *,
        timeout: float = 60.0,
        max_retries: int = 2,
        batch_size: int = 32,
        session: requests.Session | None = None,
    ):
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.max_retries = max_retries
        self.batch_size = batch_size
        self._session = session or requests.Session()

    def _post(self, route: str, payload: dict[str, Any]) -> dict[str, Any]:
        url = f"{self.endpoint}{route}"
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            try:
                response = self._session.post(url, json=payload, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = exc
                logger.warning("request to %s failed (attempt %d): %s", url, attempt + 1, exc)
                continue
            if response.status_code >= 500:
                last_error = BackendError(f"{url} returned {response.status_code}")
                logger.warning("transient %d from %s (attempt %d)", response.status_code, url, attempt + 1)
                continue
            if response.status_code >= 400:
                raise ProtocolError(f"{url} rejected request: {response.status_code} {response.text[:200]}")
            try:
                body = response.json()
            except ValueError as exc:
                raise ProtocolError(f"{url} returned non-JSON body") from exc
            if not isinstance(body, dict):
                raise ProtocolError(f"{url} returned non-object body")
            return body
        raise BackendError(f"{url} unreachable after {self.max_retries + 1} attempts") from last_error

    def classify_batch(self, pairs: list[tuple[str, str]]) -> list[Verdict]:
        verdicts: list[Verdict] = []
        for start in range(0, len(pairs), self.batch_size):
            chunk = pairs[start : start + self.batch_size]
            body = self._post(
                "/nli",
                {"pairs": [{"premise": p, "hypothesis": h} for p, h in chunk]},
            )
            raw = body.get("verdicts")
            if not isinstance(raw, list) or len(raw) != len(chunk):
                raise ProtocolError(
                    f"/nli returned {0 if not isinstance(raw, list) else len(raw)} "
                    f"verdicts for {len(chunk)} pairs"
                )
            for entry in raw:
                label = entry.get("label") if isinstance(entry, dict) else None
                if label not in LABELS:
                    raise ProtocolError(f"/nli returned unknown label {label!r}")
                verdicts.append(Verdict(label=label, score=entry.get("score")))
        return verdicts

    def classify(self, premise: str, hypothesis: str) -> Verdict:
        return self.classify_batch([(premise, hypothesis)])[0]

    def split_batch(self, sentences: list[str]) -> list[ClaimSet]:
        results: list[ClaimSet] = []
        for start in range(0, len(sentences), self.batch_size):
            chunk = sentences[start : start + self.batch_size]
            body = self._post("/claimsplit", {"sentences": chunk})
            raw = body.get("claims")
            if not isinstance(raw, list) or len(raw) != len(chunk):
                raise ProtocolError(
                    f"/claimsplit returned {0 if not isinstance(raw, list) else len(raw)} "
                    f"claim lists for {len(chunk)} sentences"
                )
            for sentence, claims in zip(chunk, raw):
                if not isinstance(claims, list) or any(not isinstance(c, str) for c in claims):
                    raise ProtocolError("/claimsplit returned a malformed claim list")
                cleaned = tuple(c for c in claims if c)
                if not cleaned:
                    logger.warning("empty claim split for %r; using the sentence itself", sentence)
                    cleaned = (sentence,)
                results.append(ClaimSet(source=sentence, claims=cleaned))
        return results

    def split(self, sentence: str) -> ClaimSet:
        return self.split_batch([sentence])[0]

    def health(self) -> dict[str, Any]:
        url = f"{self.endpoint}/healthz"
        try:
            response = self._session.get(url, timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendError(f"{url} unreachable") from exc
        if response.status_code != 200:
            raise BackendError(f"{url} returned {response.status_code}")
        return response.json()


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class VerificationEngine:
    """Backends plus a deterministic content-hash cache.

    Cache hits return the object stored on first call, so results are
    independent of call order and of whether caching is enabled. The cache can
    be persisted to disk between runs.
    """

    def __init__(
        self,
        nli: NliBackend,
        claimsplit: ClaimSplitBackend,
        *,
        premise_limit: int | None = None,
        cache_path: str | Path | None = None,
        enable_cache: bool = True,
    ):
        self.nli = nli
        self.claimsplit = claimsplit
        self.premise_limit = premise_limit
        self.enable_cache = enable_cache
        self.cache_path = Path(cache_path) if cache_path else None
        self._nli_cache: dict[str, Verdict] = {}
        self._claim_cache: dict[str, ClaimSet] = {}
        self._lock = threading.Lock()
        if self.cache_path and self.cache_path.exists():
            self.load_cache()

    def _truncate(self, premise: str) -> str:
        if self.premise_limit is not None and len(premise) > self.premise_limit:
            logger.warning(
                "premise of %d characters truncated to %d", len(premise), self.premise_limit
            )
            return premise[: self.premise_limit]
        return premise

    def classify(self, premise: str, hypothesis: str) -> Verdict:
        premise = self._truncate(premise)
        key = _digest(premise) + _digest(hypothesis)
        if self.enable_cache:
            with self._lock:
                hit = self._nli_cache.get(key)
            if hit is not None:
                return hit
        verdict = self.nli.classify(premise, hypothesis)
        if self.enable_cache:
            with self._lock:
                verdict = self._nli_cache.setdefault(key, verdict)
        return verdict

    def split(self, sentence: str) -> ClaimSet:
        key = _digest(sentence)
        if self.enable_cache:
            with self._lock:
                hit = self._claim_cache.get(key)
            if hit is not None:
                return hit
        claims = self.claimsplit.split(sentence)
        if self.enable_cache:
            with self._lock:
                claims = self._claim_cache.setdefault(key, claims)
        return claims

    def classify_batch(self, pairs: Iterable[tuple[str, str]]) -> list[Verdict]:
        return [self.classify(p, h) for p, h in pairs]

    def save_cache(self) -> None:
        if not self.cache_path:
            return
        with self._lock:
            payload = {
                "nli": {
                    k: {"label": v.label, "score": v.score} for k, v in self._nli_cache.items()
                },
                "claims": {
                    k: {"source": c.source, "claims": list(c.claims)}
                    for k, c in self._claim_cache.items()
                },
            }
        self.cache_path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.cache_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")
        tmp.replace(self.cache_path)

    def load_cache(self) -> None:
        payload = json.loads(self.cache_path.read_text(encoding="utf-8"))
        with self._lock:
            self._nli_cache = {
                k: Verdict(label=v["label"], score=v.get("score"))
                for k, v in payload.get("nli", {}).items()
            }
            self._claim_cache = {
                k: ClaimSet(source=c["source"], claims=tuple(c["claims"]))
                for k, c in payload.get("claims", {}).items()
            }
