#!/usr/bin/env python3
"""Best-effort downloader for the released WebCiteS dataset.

Places train/dev/test JSON-lines files under data/webcites/ so that
``citeval stats`` and the dataset acceptance test can run. Requires network
access. If the automatic download fails, fetch the released files manually
and drop them in the target directory; the ``webcites`` schema adapter
tolerates the usual field-name variants.
"""

from __future__ import annotations

import sys
from pathlib import Path

TARGET = Path(__file__).resolve().parent.parent / "data" / "webcites"
REPO_ID = "HarlynDN/WebCiteS"
SPLITS = ("train", "dev", "test")


def main() -> int:
    TARGET.mkdir(parents=True, exist_ok=True)
    try:
        from huggingface_hub import snapshot_download
    except ImportError:
        print("huggingface_hub not installed; install it or fetch the files manually")
        return 1
    try:
        snapshot = Path(
            snapshot_download(repo_id=REPO_ID, repo_type="dataset", allow_patterns=["*.json*"])
        )
    except Exception as exc:
        print(f"download failed: {exc}")
        print(f"fetch the released files manually into {TARGET}")
        return 1
    found = 0
    for split in SPLITS:
        matches = sorted(snapshot.rglob(f"{split}*.json*"))
        if not matches:
            print(f"no file matching {split}*.json* in the snapshot")
            continue
        target = TARGET / f"{split}.jsonl"
        target.write_bytes(matches[0].read_bytes())
        print(f"{matches[0].name} -> {target}")
        found += 1
    return 0 if found == len(SPLITS) else 1


if __name__ == "__main__":
    sys.exit(main())
