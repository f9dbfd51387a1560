"""Script detection and script-aware tokenization shared across metrics."""

from __future__ import annotations

# Codepoint ranges treated as CJK letters (ideographs plus kana/hangul, which
# are also written without word separators).
_CJK_RANGES = (
    (0x3400, 0x4DBF),    # CJK ext A
    (0x4E00, 0x9FFF),    # CJK unified
    (0xF900, 0xFAFF),    # CJK compat
    (0x20000, 0x2A6DF),  # CJK ext B
    (0x3040, 0x30FF),    # hiragana, katakana
    (0xAC00, 0xD7AF),    # hangul
)


def is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def dominant_script(text: str) -> str:
    """Classify text as "cjk" or "latin" by majority letter codepoint class."""
    cjk = 0
    other = 0
    for ch in text:
        if is_cjk(ch):
            cjk += 1
        elif ch.isalpha():
            other += 1
    return "cjk" if cjk > other else "latin"


def text_length(text: str) -> int:
    """Length in characters for CJK-dominant text, whitespace words otherwise."""
    if dominant_script(text) == "cjk":
        return len(text)
    return len(text.split())


def tokenize(text: str) -> list[str]:
    """Tokens for n-gram metrics: characters for CJK text, whitespace words otherwise.

    Whitespace characters are never tokens.
    """
    if dominant_script(text) == "cjk":
        return [ch for ch in text if not ch.isspace()]
    return text.split()
