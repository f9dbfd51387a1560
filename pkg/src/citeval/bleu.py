"""Sentence-level BLEU-4 with epsilon-floor smoothing.

Modified n-gram precisions for n=1..4 over the orders the candidate can
produce, geometric mean with a 1e-9 floor for zero match counts, and the
standard brevity penalty against the closest reference length.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence

EPSILON = 1e-9


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def modified_precision(
    candidate: Sequence[str], references: Sequence[Sequence[str]], n: int
) -> tuple[int, int]:
    """Clipped match count and total candidate n-gram count for order n."""
    counts = ngram_counts(candidate, n)
    total = sum(counts.values())
    if total == 0:
        return 0, 0
    max_ref: Counter = Counter()
    for ref in references:
        for gram, cnt in ngram_counts(ref, n).items():
            if cnt > max_ref[gram]:
                max_ref[gram] = cnt
    clipped = sum(min(cnt, max_ref[gram]) for gram, cnt in counts.items())
    return clipped, total


def brevity_penalty(candidate_len: int, reference_lens: Sequence[int]) -> float:
    if candidate_len == 0:
        return 0.0
    closest = min(reference_lens, key=lambda r: (abs(r - candidate_len), r))
    if candidate_len > closest:
        return 1.0
    return math.exp(1.0 - closest / candidate_len)


def sentence_bleu(
    candidate: Sequence[str],
    references: Sequence[Sequence[str]],
    max_order: int = 4,
) -> float:
    """BLEU of one tokenized sentence against tokenized references, in [0, 1].

    Orders the candidate is too short to produce are dropped from the
    geometric mean; zero match counts at produced orders floor at EPSILON.
    """
    if not candidate or not references:
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, max_order + 1):
        clipped, total = modified_precision(candidate, references, n)
        if total == 0:
            break
        precision = clipped / total if clipped > 0 else EPSILON
        log_sum += math.log(precision)
        orders += 1
    if orders == 0:
        return 0.0
    bp = brevity_penalty(len(candidate), [len(r) for r in references])
    return bp * math.exp(log_sum / orders)
