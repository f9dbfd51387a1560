"""Runtime configuration, sourced from environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelConfig:
    """Model identifiers and serving limits.

    ``heuristic`` selects the built-in deterministic models; any other
    identifier is treated as a transformers checkpoint.
    """

    nli_model: str = "heuristic"
    claimsplit_model: str = "heuristic"
    device: str = "cpu"
    batch_limit: int = 64
    max_seq_len: int = 512
    port: int = 8080

    def __post_init__(self) -> None:
        if self.batch_limit < 1:
            raise ValueError("batch limit must be >= 1")
        if self.max_seq_len < 1:
            raise ValueError("max sequence length must be >= 1")

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ModelConfig":
        env = os.environ if env is None else env
        return cls(
            nli_model=env.get("SIDECAR_NLI_MODEL", "heuristic"),
            claimsplit_model=env.get("SIDECAR_CLAIMSPLIT_MODEL", "heuristic"),
            device=env.get("SIDECAR_DEVICE", "cpu"),
            batch_limit=int(env.get("SIDECAR_BATCH_LIMIT", "64")),
            max_seq_len=int(env.get("SIDECAR_MAX_SEQ_LEN", "512")),
            port=int(env.get("SIDECAR_PORT", "8080")),
        )
