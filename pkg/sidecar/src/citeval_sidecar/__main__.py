"""Run the sidecar with uvicorn: ``python -m citeval_sidecar``."""

from __future__ import annotations

import uvicorn

from .app import create_app
from .config import ModelConfig


def main() -> None:
    config = ModelConfig.from_env()
    uvicorn.run(create_app(config), host="0.0.0.0", port=config.port)


if __name__ == "__main__":
    main()
