"""Inference sidecar serving entailment and claim-split models over HTTP."""

from .app import create_app
from .config import ModelConfig

__all__ = ["ModelConfig", "create_app"]
__version__ = "0.1.0"
