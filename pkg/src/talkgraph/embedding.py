"""Paragraph-vector (PV-DBOW) document embeddings with negative sampling.

Each talk gets a dense vector trained so that the vector predicts the
talk's own words: for every surviving token position the document vector
is pushed toward the target word's output vector and away from sampled
noise words (unigram^0.75 distribution). Talk-to-talk similarity is the
cosine between document vectors.

Heavy lifting happens in a numba-compiled SGD kernel over float32
matrices with float64 accumulation. The kernel carries its own counter-
style RNG so that single-worker training is bit-reproducible for a fixed
seed. Multi-worker mode runs the same kernel on disjoint document slices
from nogil threads without locking; it is faster but *not* deterministic.

The `window` setting is recorded in the config for interface fidelity but
does not alter the default objective: PV-DBOW trains on every kept token
position of a document.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .corpus import Corpus
from .errors import EmptyInputError

# 2**-53: turns the top 53 bits of a uint64 into a uniform double in [0, 1).
_U53 = 1.0 / 9007199254740992.0


@dataclass(frozen=True)
class TrainConfig:
    dim: int = 200
    window: int = 8
    epochs: int = 20
    negatives: int = 5
    initial_lr: float = 0.025
    final_lr: float = 0.0001
    min_count: int = 5
    subsample_threshold: float = 1e-3
    seed: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.negatives < 1:
            raise ValueError(f"negatives must be >= 1, got {self.negatives}")
        if not (0.0 < self.final_lr <= self.initial_lr):
            raise ValueError(
                f"need 0 < final_lr <= initial_lr, got {self.final_lr} and {self.initial_lr}"
            )
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class Vocab:
    """Training vocabulary ordered by (count desc, word asc)."""

    words: tuple[tuple[str, int], ...]
    index: dict[str, int]
    noise_probs: np.ndarray  # float64, proportional to count**0.75, sums to 1

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class EmbeddingModel:
    doc_vectors: np.ndarray  # float32, one row per talk id
    word_out_vectors: np.ndarray  # float32, one row per vocab word
    vocab: Vocab
    config: TrainConfig
    epoch_mean_losses: tuple[float, ...] = field(default=())


def build_vocab(corpus: Corpus | Sequence[Sequence[str]], config: TrainConfig) -> Vocab:
    """Count words, drop those below min_count, fix the noise distribution."""
    counts: Counter[str] = Counter()
    for item in corpus:
        counts.update(getattr(item, "tokens", item))
    kept = [(word, count) for word, count in counts.items() if count >= config.min_count]
    if not kept:
        raise EmptyInputError(
            f"no word reaches min_count={config.min_count}; vocabulary is empty"
        )
    kept.sort(key=lambda entry: (-entry[1], entry[0]))
    weights = np.array([count for _, count in kept], dtype=np.float64) ** 0.75
    return Vocab(
        words=tuple(kept),
        index={word: i for i, (word, _) in enumerate(kept)},
        noise_probs=weights / weights.sum(),
    )


def _sigmoid(x: float) -> float:
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def _softplus(x: float) -> float:
    # ln(1 + e^x), stable for large |x|.
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def neg_sampling_step(
    doc_vec: np.ndarray,
    target_word_vec: np.ndarray,
    noise_word_vecs: Sequence[np.ndarray],
    lr: float,
) -> tuple[float, np.ndarray, np.ndarray, list[np.ndarray]]:
    """One negative-sampling SGD step in double precision.

    loss = -ln sigma(d.t) - sum_n ln sigma(-d.n). All updates use the
    pre-update vectors (simultaneous update); the pre-update loss and the
    updated copies of d, t, and every noise vector are returned. This is
    the reference the compiled kernel is checked against.
    """
    if lr <= 0.0:
        raise ValueError(f"learning rate must be positive, got {lr}")
    d = np.asarray(doc_vec, dtype=np.float64)
    t = np.asarray(target_word_vec, dtype=np.float64)
    negs = [np.asarray(n, dtype=np.float64) for n in noise_word_vecs]
    for v in (d, t, *negs):
        if v.shape != d.shape:
            raise ValueError("all vectors must share one dimensionality")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite input vector")

    dot = float(d @ t)
    loss = _softplus(-dot)
    g_pos = _sigmoid(dot) - 1.0
    grad_d = g_pos * t
    new_t = t - lr * g_pos * d

    new_negs = []
    for n in negs:
        dn = float(d @ n)
        loss += _softplus(dn)
        g_neg = _sigmoid(dn)
        grad_d = grad_d + g_neg * n
        new_negs.append(n - lr * g_neg * d)

    return loss, d - lr * grad_d, new_t, new_negs


@njit(cache=True, nogil=True)
def _sgd_kernel(
    doc_vecs,
    word_vecs,
    token_ids,
    doc_offsets,
    begin,
    end,
    keep_probs,
    noise_cdf,
    epochs,
    negatives,
    initial_lr,
    final_lr,
    seed,
    loss_sums,
    loss_counts,
):  # pragma: no cover - exercised via train()
    dim = doc_vecs.shape[1]
    n_words = noise_cdf.shape[0]
    grad_d = np.empty(dim, dtype=np.float64)

    total = np.float64(epochs * (doc_offsets[end] - doc_offsets[begin]))
    if total <= 0.0:
        return
    lr_span = initial_lr - final_lr
    state = seed
    pos = np.float64(0.0)

    for epoch in range(epochs):
        for doc in range(begin, end):
            for i in range(doc_offsets[doc], doc_offsets[doc + 1]):
                lr = initial_lr - lr_span * (pos / total)
                if lr < final_lr:
                    lr = final_lr
                pos += 1.0

                target = token_ids[i]
                # One subsampling draw per scheduled position keeps the
                # RNG stream aligned with the learning-rate schedule.
                state = state * np.uint64(6364136223846793005) + np.uint64(1442695040888963407)
                u = np.float64(state >> np.uint64(11)) * _U53
                if u >= keep_probs[target]:
                    continue

                # Positive term: push doc vector toward the target word.
                dot = 0.0
                for j in range(dim):
                    dot += np.float64(doc_vecs[doc, j]) * np.float64(word_vecs[target, j])
                if dot >= 0.0:
                    z = math.exp(-dot)
                    sig = 1.0 / (1.0 + z)
                    loss = math.log1p(z)
                else:
                    z = math.exp(dot)
                    sig = z / (1.0 + z)
                    loss = -dot + math.log1p(z)
                g = sig - 1.0
                for j in range(dim):
                    grad_d[j] = g * np.float64(word_vecs[target, j])
                for j in range(dim):
                    word_vecs[target, j] -= np.float32(lr * g * np.float64(doc_vecs[doc, j]))

                # Negative terms: push away from sampled noise words.
                for _ in range(negatives):
                    state = (
                        state * np.uint64(6364136223846793005) + np.uint64(1442695040888963407)
                    )
                    u = np.float64(state >> np.uint64(11)) * _U53
                    lo = 0
                    hi = n_words - 1
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if noise_cdf[mid] > u:
                            hi = mid
                        else:
                            lo = mid + 1
                    noise = lo
                    if noise == target:
                        continue
                    dot = 0.0
                    for j in range(dim):
                        dot += np.float64(doc_vecs[doc, j]) * np.float64(word_vecs[noise, j])
                    if dot >= 0.0:
                        z = math.exp(-dot)
                        sig = 1.0 / (1.0 + z)
                        loss += dot + math.log1p(z)
                    else:
                        z = math.exp(dot)
                        sig = z / (1.0 + z)
                        loss += math.log1p(z)
                    for j in range(dim):
                        grad_d[j] += sig * np.float64(word_vecs[noise, j])
                    for j in range(dim):
                        word_vecs[noise, j] -= np.float32(lr * sig * np.float64(doc_vecs[doc, j]))

                for j in range(dim):
                    doc_vecs[doc, j] -= np.float32(lr * grad_d[j])
                loss_sums[epoch] += loss
                loss_counts[epoch] += 1


def _keep_probabilities(vocab: Vocab, threshold: float) -> np.ndarray:
    """P(keep) per vocab word under frequency subsampling.

    keep = min(1, sqrt(t/f) + t/f) with f the word's corpus frequency.
    threshold <= 0 disables subsampling (every word always kept).
    """
    counts = np.array([count for _, count in vocab.words], dtype=np.float64)
    if threshold <= 0.0:
        return np.ones_like(counts)
    freq = counts / counts.sum()
    ratio = threshold / freq
    return np.minimum(1.0, np.sqrt(ratio) + ratio)


def train(
    corpus: Corpus | Sequence[Sequence[str]],
    config: TrainConfig,
    workers: int = 1,
    vocab: Optional[Vocab] = None,
) -> EmbeddingModel:
    """Train PV-DBOW vectors for every document of the corpus.

    Single-worker training is bit-reproducible for a fixed seed. With
    workers > 1 the documents are split into contiguous slices trained
    concurrently without locking, which is nondeterministic.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    token_lists = [tuple(getattr(item, "tokens", item)) for item in corpus]
    if not token_lists:
        raise EmptyInputError("cannot train on an empty corpus")
    if vocab is None:
        vocab = build_vocab(token_lists, config)
    else:
        corpus_words = set()
        for tokens in token_lists:
            corpus_words.update(tokens)
        missing = [word for word, _ in vocab.words if word not in corpus_words]
        if missing:
            raise ValueError(
                f"vocab does not match corpus: {len(missing)} vocab words absent, "
                f"e.g. {missing[0]!r}"
            )

    ids: list[int] = []
    offsets = [0]
    for tokens in token_lists:
        ids.extend(vocab.index[w] for w in tokens if w in vocab.index)
        offsets.append(len(ids))
    token_ids = np.array(ids, dtype=np.int32)
    doc_offsets = np.array(offsets, dtype=np.int64)

    n_docs, dim = len(token_lists), config.dim
    rng = np.random.Generator(np.random.PCG64(config.seed))
    doc_vecs = (rng.random((n_docs, dim), dtype=np.float32) - np.float32(0.5)) / np.float32(dim)
    word_vecs = (rng.random((len(vocab), dim), dtype=np.float32) - np.float32(0.5)) / np.float32(
        dim
    )

    keep_probs = _keep_probabilities(vocab, config.subsample_threshold)
    cdf = np.cumsum(vocab.noise_probs)
    cdf[-1] = 1.0

    workers = min(workers, n_docs)
    bounds = np.linspace(0, n_docs, workers + 1, dtype=np.int64)
    seeds = rng.integers(0, 2**64, size=workers, dtype=np.uint64)
    sums = np.zeros((workers, config.epochs), dtype=np.float64)
    counts = np.zeros((workers, config.epochs), dtype=np.int64)

    def run(worker: int) -> None:
        _sgd_kernel(
            doc_vecs,
            word_vecs,
            token_ids,
            doc_offsets,
            np.int64(bounds[worker]),
            np.int64(bounds[worker + 1]),
            keep_probs,
            cdf,
            np.int64(config.epochs),
            np.int64(config.negatives),
            np.float64(config.initial_lr),
            np.float64(config.final_lr),
            seeds[worker],
            sums[worker],
            counts[worker],
        )

    if workers == 1:
        run(0)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(workers)))

    if not (np.all(np.isfinite(doc_vecs)) and np.all(np.isfinite(word_vecs))):
        raise ArithmeticError("training produced non-finite vectors; lower the learning rate")

    with np.errstate(invalid="ignore"):
        per_epoch = sums.sum(axis=0) / np.maximum(counts.sum(axis=0), 1)
    return EmbeddingModel(
        doc_vectors=doc_vecs,
        word_out_vectors=word_vecs,
        vocab=vocab,
        config=config,
        epoch_mean_losses=tuple(float(x) for x in per_epoch),
    )


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """a.b / (|a||b|) in double precision; zero vectors are an error."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("cosine similarity of a zero vector is undefined")
    return float(np.clip(a @ b / (norm_a * norm_b), -1.0, 1.0))
