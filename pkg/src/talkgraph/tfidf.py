"""TF-IDF weighting and per-talk word clouds.

tf is length-normalized (count / doc_len) because transcript lengths vary
widely; idf is the unsmoothed natural log ln(n_docs / df). Every scored
word comes from the corpus itself, so df >= 1 always holds and no
smoothing is needed. Words occurring in every document get weight exactly
zero and never enter a cloud.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Corpus, Talk
from .errors import EmptyInputError

DEFAULT_CLOUD_SIZE = 30


@dataclass(frozen=True)
class DocumentFrequencies:
    df: dict[str, int]
    n_docs: int


@dataclass(frozen=True)
class WordCloud:
    """Top words of one talk, sorted by (weight desc, word asc)."""

    talk_id: int
    entries: tuple[tuple[str, float], ...]

    def words(self) -> list[str]:
        return [word for word, _ in self.entries]


def _token_lists(corpus: Corpus | Iterable[Sequence[str]]) -> list[Sequence[str]]:
    return [item.tokens if isinstance(item, Talk) else item for item in corpus]


def document_frequencies(corpus: Corpus | Iterable[Sequence[str]]) -> DocumentFrequencies:
    """Count, for each word, the number of documents containing it."""
    token_lists = _token_lists(corpus)
    if not token_lists:
        raise EmptyInputError("cannot compute document frequencies of an empty corpus")
    df: Counter[str] = Counter()
    for tokens in token_lists:
        df.update(set(tokens))
    return DocumentFrequencies(df=dict(df), n_docs=len(token_lists))


def tfidf_weight(count: int, doc_len: int, word: str, dfs: DocumentFrequencies) -> float:
    """(count / doc_len) * ln(n_docs / df(word)); raises KeyError on unknown word."""
    if count < 1 or doc_len < count:
        raise ValueError(f"need 1 <= count <= doc_len, got count={count}, doc_len={doc_len}")
    return (count / doc_len) * math.log(dfs.n_docs / dfs.df[word])


def wordcloud(talk: Talk, dfs: DocumentFrequencies, k: int = DEFAULT_CLOUD_SIZE) -> WordCloud:
    """Top-k distinct words of a talk by TF-IDF weight.

    Ties break lexicographically ascending; zero-weight words (those that
    appear in every document) are excluded even when fewer than k words
    remain. An empty talk yields an empty cloud.
    """
    if k < 1:
        raise ValueError(f"cloud size must be >= 1, got {k}")
    doc_len = len(talk.tokens)
    if doc_len == 0:
        return WordCloud(talk_id=talk.meta.id, entries=())
    counts = Counter(talk.tokens)
    scored = []
    for word, count in counts.items():
        weight = tfidf_weight(count, doc_len, word, dfs)
        if weight > 0.0:
            scored.append((word, weight))
    scored.sort(key=lambda entry: (-entry[1], entry[0]))
    return WordCloud(talk_id=talk.meta.id, entries=tuple(scored[:k]))


def corpus_clouds(corpus: Corpus, k: int = DEFAULT_CLOUD_SIZE) -> list[WordCloud]:
    """Word clouds for every talk, in talk-id order."""
    dfs = document_frequencies(corpus)
    return [wordcloud(talk, dfs, k) for talk in corpus]
