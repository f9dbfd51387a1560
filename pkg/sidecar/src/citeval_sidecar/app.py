"""HTTP service exposing the entailment and claim-split wire protocol."""

from __future__ import annotations

import logging
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .config import ModelConfig
from .models import load_claimsplit_model, load_nli_model

logger = logging.getLogger(__name__)


class Pair(BaseModel):
    premise: str
    hypothesis: str


class NliRequest(BaseModel):
    pairs: list[Pair] = Field(min_length=1)


class VerdictModel(BaseModel):
    label: Literal["entailment", "contradiction", "neutral"]
    score: float | None = None


class ItemWarning(BaseModel):
    index: int
    warning: str


class NliResponse(BaseModel):
    verdicts: list[VerdictModel]
    warnings: list[ItemWarning] = []


class ClaimSplitRequest(BaseModel):
    sentences: list[str] = Field(min_length=1)


class ClaimSplitResponse(BaseModel):
    claims: list[list[str]]
    warnings: list[ItemWarning] = []


def create_app(config: ModelConfig | None = None) -> FastAPI:
    config = config or ModelConfig.from_env()
    nli_model = load_nli_model(config)
    claimsplit_model = load_claimsplit_model(config)

    app = FastAPI(title="citeval-sidecar")

    def enforce_batch_limit(size: int) -> None:
        if size > config.batch_limit:
            raise HTTPException(
                status_code=413,
                detail=f"batch of {size} exceeds the limit of {config.batch_limit}",
            )

    @app.get("/healthz")
    def healthz() -> dict:
        return {
            "status": "ok",
            "models": {
                "nli": getattr(nli_model, "name", config.nli_model),
                "claimsplit": getattr(claimsplit_model, "name", config.claimsplit_model),
            },
        }

    @app.post("/nli", response_model=NliResponse)
    def nli(request: NliRequest) -> NliResponse:
        enforce_batch_limit(len(request.pairs))
        warnings: list[ItemWarning] = []
        prepared: list[tuple[str, str]] = []
        for index, pair in enumerate(request.pairs):
            premise = pair.premise
            if len(premise) > config.max_seq_len:
                premise = premise[: config.max_seq_len]
                warnings.append(
                    ItemWarning(
                        index=index,
                        warning=f"premise truncated to {config.max_seq_len} characters",
                    )
                )
            if not pair.hypothesis.strip():
                warnings.append(ItemWarning(index=index, warning="empty hypothesis"))
            prepared.append((premise, pair.hypothesis))
        verdicts = [
            VerdictModel(label=label, score=score)
            for label, score in nli_model.predict(prepared)
        ]
        return NliResponse(verdicts=verdicts, warnings=warnings)

    @app.post("/claimsplit", response_model=ClaimSplitResponse)
    def claimsplit(request: ClaimSplitRequest) -> ClaimSplitResponse:
        enforce_batch_limit(len(request.sentences))
        warnings: list[ItemWarning] = []
        claims: list[list[str]] = []
        results = claimsplit_model.split(
            [s if s.strip() else "" for s in request.sentences]
        )
        for index, (sentence, result) in enumerate(zip(request.sentences, results)):
            if not sentence.strip():
                warnings.append(ItemWarning(index=index, warning="empty sentence"))
                claims.append([])
                continue
            cleaned = [c for c in result if c.strip()]
            claims.append(cleaned or [sentence])
        return ClaimSplitResponse(claims=claims, warnings=warnings)

    return app
