#!/usr/bin/env python3
"""Regenerate golden reports under tests/golden/ from the brute-force
reference implementation in tests/reference.py."""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import reference as ref  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    table = ref.load_table(FIXTURES / "oracle.json")
    records = ref.load_jsonl(FIXTURES / "corpus.jsonl")
    predictions = {
        r["sample_id"]: r["summary"] for r in ref.load_jsonl(FIXTURES / "predictions.jsonl")
    }

    for policy in ("auto", "default"):
        reports = [
            ref.ref_evaluate_sample(table, record, predictions[record["id"]], policy)
            for record in sorted(records, key=lambda r: r["id"])
        ]
        with open(GOLDEN / f"samples_{policy}.jsonl", "w", encoding="utf-8") as fh:
            for report in reports:
                fh.write(json.dumps(report, ensure_ascii=False) + "\n")
        with open(GOLDEN / f"corpus_{policy}.json", "w", encoding="utf-8") as fh:
            json.dump(ref.ref_aggregate(reports), fh, ensure_ascii=False, indent=1)

    pred_bits, human_bits = ref.ref_agreement(table, records, "auto")
    with open(GOLDEN / "agreement_auto.json", "w", encoding="utf-8") as fh:
        json.dump(
            {"kappa": ref.ref_kappa(pred_bits, human_bits), "pairs": len(pred_bits)},
            fh,
            indent=1,
        )

    sentences = [t for r in records for t, _ in ref.parse_summary(r["summary"])]
    quality = ref.ref_claimsplit_quality(table, sentences)
    with open(GOLDEN / "claimsplit_quality.json", "w", encoding="utf-8") as fh:
        json.dump({**quality, "sentences": len(sentences)}, fh, indent=1)

    print(f"golden files written to {GOLDEN}")


if __name__ == "__main__":
    main()
