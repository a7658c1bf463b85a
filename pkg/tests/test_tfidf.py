"""Tests for TF-IDF weights and word clouds, including a brute-force oracle."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from talkgraph.corpus import Talk, TalkMeta
from talkgraph.errors import EmptyInputError
from talkgraph.tfidf import DocumentFrequencies, document_frequencies, tfidf_weight, wordcloud


def make_talk(talk_id, tokens):
    meta = TalkMeta(
        id=talk_id, title=f"t{talk_id}", speaker="s", tags=(), views=1, url=f"u{talk_id}"
    )
    return Talk(meta=meta, transcript=" ".join(tokens), tokens=tuple(tokens))


class TestDocumentFrequencies:
    def test_counts_documents_not_occurrences(self):
        dfs = document_frequencies([["a", "b"], ["a"], ["c"]])
        assert dfs.df == {"a": 2, "b": 1, "c": 1}
        assert dfs.n_docs == 3

    def test_single_document_repeated_word(self):
        dfs = document_frequencies([["a", "a", "a"]])
        assert dfs.df == {"a": 1}
        assert dfs.n_docs == 1

    def test_empty_document_still_counts_toward_n_docs(self):
        dfs = document_frequencies([["a"], []])
        assert dfs.df == {"a": 1}
        assert dfs.n_docs == 2

    def test_accepts_talks(self):
        dfs = document_frequencies([make_talk(0, ["a", "b"]), make_talk(1, ["b"])])
        assert dfs.df == {"a": 1, "b": 2}

    def test_empty_corpus_is_fatal(self):
        with pytest.raises(EmptyInputError):
            document_frequencies([])


class TestTfidfWeight:
    def test_hand_computed_value(self):
        """count=2, doc_len=4, df=1, n_docs=3 -> 0.5 * ln 3."""
        dfs = DocumentFrequencies(df={"w": 1}, n_docs=3)
        assert tfidf_weight(2, 4, "w", dfs) == pytest.approx(0.5 * math.log(3.0), abs=1e-12)

    def test_word_in_every_document_weighs_zero(self):
        dfs = DocumentFrequencies(df={"w": 7}, n_docs=7)
        assert tfidf_weight(3, 10, "w", dfs) == 0.0

    def test_single_doc_single_word(self):
        dfs = DocumentFrequencies(df={"w": 1}, n_docs=1)
        assert tfidf_weight(1, 1, "w", dfs) == 0.0

    def test_unknown_word_raises(self):
        dfs = DocumentFrequencies(df={"w": 1}, n_docs=1)
        with pytest.raises(KeyError):
            tfidf_weight(1, 1, "v", dfs)

    def test_bad_counts_rejected(self):
        dfs = DocumentFrequencies(df={"w": 1}, n_docs=1)
        with pytest.raises(ValueError):
            tfidf_weight(0, 4, "w", dfs)
        with pytest.raises(ValueError):
            tfidf_weight(5, 4, "w", dfs)


class TestWordcloud:
    def test_zero_weight_words_excluded(self):
        docs = [["a", "a", "b"], ["b", "c"], ["b", "d"]]
        dfs = document_frequencies(docs)
        cloud = wordcloud(make_talk(0, docs[0]), dfs, k=5)
        assert cloud.words() == ["a"]
        assert cloud.entries[0][1] == pytest.approx((2 / 3) * math.log(3.0), abs=1e-12)

    def test_lexicographic_tie_break_and_truncation(self):
        docs = [["b", "a"], ["c"]]
        dfs = document_frequencies(docs)
        cloud = wordcloud(make_talk(0, docs[0]), dfs, k=1)
        assert cloud.words() == ["a"]

    def test_empty_doc_gives_empty_cloud(self):
        dfs = document_frequencies([["a"], []])
        cloud = wordcloud(make_talk(1, []), dfs, k=3)
        assert cloud.entries == ()

    def test_k_must_be_positive(self):
        dfs = document_frequencies([["a"]])
        with pytest.raises(ValueError):
            wordcloud(make_talk(0, ["a"]), dfs, k=0)


corpora = st.lists(
    st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=0, max_size=12),
    min_size=1,
    max_size=10,
)


class TestWordcloudProperties:
    @given(corpora, st.integers(min_value=1, max_value=6))
    def test_matches_direct_formula_evaluation(self, docs, k):
        """Oracle: evaluate tf*idf for every word directly and sort the same way."""
        dfs = document_frequencies(docs)
        for talk_id, tokens in enumerate(docs):
            expected = []
            for word in set(tokens):
                tf = tokens.count(word) / len(tokens)
                idf = math.log(len(docs) / sum(1 for d in docs if word in d))
                if tf * idf > 0.0:
                    expected.append((word, tf * idf))
            expected.sort(key=lambda entry: (-entry[1], entry[0]))
            cloud = wordcloud(make_talk(talk_id, tokens), dfs, k=k)
            assert cloud.words() == [w for w, _ in expected[:k]]
            for (_, got), (_, want) in zip(cloud.entries, expected):
                assert got == pytest.approx(want, abs=1e-12)

    @given(corpora)
    def test_word_in_all_documents_never_in_any_cloud(self, docs):
        dfs = document_frequencies(docs)
        everywhere = {w for w in dfs.df if dfs.df[w] == dfs.n_docs}
        for talk_id, tokens in enumerate(docs):
            cloud = wordcloud(make_talk(talk_id, tokens), dfs, k=10)
            assert not (set(cloud.words()) & everywhere)

    @given(corpora, st.integers(min_value=2, max_value=4))
    def test_duplicating_document_tokens_preserves_cloud_order(self, docs, m):
        """tf is length-normalized, so scaling a document cannot reorder its cloud."""
        dfs = document_frequencies(docs)
        for talk_id, tokens in enumerate(docs):
            base = wordcloud(make_talk(talk_id, tokens), dfs, k=10)
            scaled = wordcloud(make_talk(talk_id, tokens * m), dfs, k=10)
            assert scaled.words() == base.words()
            for (_, got), (_, want) in zip(scaled.entries, base.entries):
                assert got == pytest.approx(want, rel=1e-12)
