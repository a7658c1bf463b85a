"""End-to-end build: corpus -> sentiment + clouds + vectors -> graph -> communities.

This is the library entry point behind `talkgraph build`. It runs every
stage in order, times each one, and assembles the single Artifact the
server loads. All knobs live in BuildOptions so a build is fully
described by (corpus bytes, lexicon bytes, options) — which is also what
makes single-worker builds reproducible.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .artifact import Artifact, FORMAT_VERSION, SentimentTable
from .community import louvain
from .corpus import Corpus
from .embedding import TrainConfig, train
from .sentiment import DEFAULT_BAND, load_lexicon, normalize_scores, score_talk
from .simgraph import pairwise_similarities, top_fraction_edges
from .tfidf import DEFAULT_CLOUD_SIZE, corpus_clouds


@dataclass(frozen=True)
class BuildOptions:
    train: TrainConfig = field(default_factory=TrainConfig)
    band: Optional[tuple[float, float]] = DEFAULT_BAND
    cloud_size: int = DEFAULT_CLOUD_SIZE
    edge_fraction: float = 0.01
    resolution: float = 1.0
    workers: int = 1

    def as_config_dict(self) -> dict:
        """JSON-ready snapshot embedded in the artifact for provenance."""
        return {
            "train": asdict(self.train),
            "band": list(self.band) if self.band is not None else None,
            "cloud_size": self.cloud_size,
            "edge_fraction": self.edge_fraction,
            "resolution": self.resolution,
            "workers": self.workers,
        }


def build_artifact(
    corpus: Corpus, lexicon_data: bytes, options: BuildOptions
) -> tuple[Artifact, dict[str, float]]:
    """Run all pipeline stages over an ingested corpus.

    Returns the artifact plus wall-clock seconds per stage (for the run
    manifest and the CLI's progress output).
    """
    timings: dict[str, float] = {}

    started = time.perf_counter()
    lexicon = load_lexicon(lexicon_data, band=options.band)
    per_talk = [score_talk(talk.tokens, lexicon) for talk in corpus]
    scores = [s.score for s in per_talk]
    sentiment = SentimentTable(
        scores=tuple(scores),
        normalized=tuple(normalize_scores(scores)),
        matched_tokens=tuple(s.matched_tokens for s in per_talk),
        total_tokens=tuple(s.total_tokens for s in per_talk),
    )
    timings["sentiment"] = time.perf_counter() - started

    started = time.perf_counter()
    clouds = tuple(corpus_clouds(corpus, k=options.cloud_size))
    timings["clouds"] = time.perf_counter() - started

    started = time.perf_counter()
    model = train(corpus, options.train, workers=options.workers)
    timings["train"] = time.perf_counter() - started

    started = time.perf_counter()
    graph = top_fraction_edges(
        pairwise_similarities(model), n_nodes=len(corpus), fraction=options.edge_fraction
    )
    timings["graph"] = time.perf_counter() - started

    started = time.perf_counter()
    communities = louvain(graph, resolution=options.resolution)
    timings["communities"] = time.perf_counter() - started

    artifact = Artifact(
        format_version=FORMAT_VERSION,
        fingerprint=corpus.source_fingerprint,
        talks=tuple(talk.meta for talk in corpus.talks),
        sentiment=sentiment,
        clouds=clouds,
        doc_vectors=model.doc_vectors,
        graph=graph,
        communities=communities,
        config=options.as_config_dict(),
    )
    return artifact, timings
