"""Phrase matching and sentence segmentation rules.

The match rule used for all hit counting: case-insensitive, whole-phrase,
token-boundary-delimited — a phrase matches only where it is not embedded
inside a longer alphanumeric token.
"""

from __future__ import annotations

import re

# A letter or digit (``\w`` minus the underscore).
_ALNUM = r"[^\W_]"

# Abbreviations whose trailing period never ends a sentence.
PROTECTED_ABBREVIATIONS = ("e.g.", "i.e.", "z.B.", "Dr.", "St.", "Nr.")

_TOKEN_RE = re.compile(rf"{_ALNUM}+")


def tokens(text: str) -> list[str]:
    """Lowercased alphanumeric tokens of a text."""
    return _TOKEN_RE.findall(text.lower())


def phrase_pattern(phrase: str) -> re.Pattern[str]:
    """Compiled regex implementing the match rule for one phrase."""
    body = re.escape(phrase)
    return re.compile(rf"(?<!{_ALNUM}){body}(?!{_ALNUM})", re.IGNORECASE)


def phrase_matches(text: str, phrase: str) -> bool:
    return phrase_pattern(phrase).search(text) is not None


def count_occurrences(text: str, phrase: str) -> int:
    return len(phrase_pattern(phrase).findall(text))


def split_sentences(text: str) -> list[str]:
    """Split plain text into sentences.

    A sentence ends at '.', '!' or '?' when followed by whitespace and an
    uppercase letter, or at end of text.  Trailing periods of the
    protected abbreviations never terminate a sentence.  Sentences are
    trimmed; empty ones dropped.
    """
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in ".!?":
            if ch == "." and _ends_with_abbreviation(text, i):
                i += 1
                continue
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            if j == n or (j > i + 1 and text[j].isupper()):
                piece = text[start:j].strip()
                if piece:
                    sentences.append(piece)
                start = j
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _ends_with_abbreviation(text: str, period_index: int) -> bool:
    head = text[: period_index + 1]
    return any(head.endswith(abbr) for abbr in PROTECTED_ABBREVIATIONS)
