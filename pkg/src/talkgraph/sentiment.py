"""Happiness scoring of talks against a word-happiness lexicon.

The lexicon is a tab-separated table (labMT 1.0 layout) mapping words to
mean happiness ratings on [1, 9]. Words rated inside an open neutral band
— (4, 6) by default — are excluded so that only emotionally loaded words
contribute. A talk's score is the frequency-weighted mean rating of its
lexicon-matched tokens; higher means more positive content.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyInputError, ParseError, SchemaError

DEFAULT_BAND = (4.0, 6.0)

LEXICON_WORD_COLUMN = "word"
LEXICON_SCORE_COLUMN = "happiness_average"


@dataclass(frozen=True)
class Lexicon:
    """Word -> happiness map with every value on [1, 9]."""

    entries: dict[str, float]

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


@dataclass(frozen=True)
class SentimentScore:
    score: Optional[float]
    matched_tokens: int
    total_tokens: int

    @property
    def coverage(self) -> float:
        if self.total_tokens == 0:
            return 0.0
        return self.matched_tokens / self.total_tokens


def load_lexicon(data: bytes, band: Optional[tuple[float, float]] = DEFAULT_BAND) -> Lexicon:
    """Parse a tab-separated lexicon and drop words inside the neutral band.

    The band is an open interval: a word is excluded iff low < rating < high,
    so the endpoints themselves are kept. Pass band=None to keep every word.
    """
    if band is not None:
        low, high = band
        if not (1.0 <= low < high <= 9.0):
            raise ValueError(f"band must satisfy 1 <= low < high <= 9, got ({low}, {high})")

    lines = data.decode("utf-8-sig").splitlines()
    if not lines:
        raise SchemaError("lexicon file is empty")
    header = lines[0].rstrip("\n").split("\t")
    index = {name.strip(): i for i, name in enumerate(header)}
    for column in (LEXICON_WORD_COLUMN, LEXICON_SCORE_COLUMN):
        if column not in index:
            raise SchemaError(f"lexicon file is missing required column '{column}'")
    word_at, score_at = index[LEXICON_WORD_COLUMN], index[LEXICON_SCORE_COLUMN]

    entries: dict[str, float] = {}
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) <= max(word_at, score_at):
            raise ParseError(f"lexicon line {line_number} has too few fields")
        word = fields[word_at].strip().lower()
        try:
            happiness = float(fields[score_at])
        except ValueError:
            raise ParseError(
                f"lexicon line {line_number} has non-numeric happiness {fields[score_at]!r}"
            ) from None
        if not (1.0 <= happiness <= 9.0):
            raise ParseError(
                f"lexicon line {line_number} has happiness {happiness} outside [1, 9]"
            )
        if not word:
            raise ParseError(f"lexicon line {line_number} has an empty word")
        if word in entries:
            raise ParseError(f"lexicon line {line_number} repeats word {word!r}")
        if band is not None and low < happiness < high:
            continue
        entries[word] = happiness

    if not entries:
        raise EmptyInputError("lexicon is empty after applying the neutral band")
    return Lexicon(entries=entries)


def score_talk(tokens: Sequence[str], lexicon: Lexicon) -> SentimentScore:
    """Frequency-weighted mean happiness of the lexicon-matched tokens.

    The accumulation runs over distinct words in sorted order, so the
    result is bitwise independent of token order. Zero matches yield an
    absent (None) score.
    """
    counts = Counter(tokens)
    total = 0.0
    matched = 0
    for word in sorted(counts):
        happiness = lexicon.entries.get(word)
        if happiness is None:
            continue
        count = counts[word]
        total += happiness * count
        matched += count
    if matched == 0:
        return SentimentScore(score=None, matched_tokens=0, total_tokens=len(tokens))
    return SentimentScore(score=total / matched, matched_tokens=matched, total_tokens=len(tokens))


def normalize_scores(scores: Sequence[Optional[float]]) -> list[Optional[float]]:
    """Min-max normalize present scores to [0, 1]; None passes through.

    The minimum maps to 0.0 and the maximum to 1.0. When all present
    scores are equal every one maps to 0.5. All-absent input is an error.
    """
    present = [s for s in scores if s is not None]
    if not present:
        raise EmptyInputError("cannot normalize: every score is absent")
    lo, hi = min(present), max(present)
    if lo == hi:
        return [None if s is None else 0.5 for s in scores]
    span = hi - lo
    return [None if s is None else (s - lo) / span for s in scores]
