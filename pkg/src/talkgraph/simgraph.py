"""All-pairs cosine similarity, top-fraction edge selection, recommendations.

The network keeps only the strongest fraction of all N(N-1)/2 pairwise
similarities (default: the top 1%). Selection is global over all pairs,
exact (no approximate nearest neighbors), and deterministic: ties at the
cut break by (a asc, b asc). Per-talk recommendation lists are full sorts
of one similarity row; a talk's neighbor subgraph is the induced network
on the talk plus its top recommendations, with the source-to-neighbor
"star" edges always included so the local view is never empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import EmptyInputError, NotFoundError


@dataclass(frozen=True)
class ScoredPair:
    a: int
    b: int
    similarity: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"pair must satisfy a < b, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class SimilarityGraph:
    """Edges sorted by (similarity desc, a asc, b asc).

    node_ids is None for the full corpus graph (nodes are 0..n_nodes-1);
    a neighbor subgraph sets it to the sorted talk ids it covers. The
    edge-budget relation edges == floor(fraction * n(n-1)/2) holds for
    graphs built by top_fraction_edges, not for subgraphs.
    """

    n_nodes: int
    edges: tuple[ScoredPair, ...]
    edge_fraction: float
    node_ids: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class RecommendationList:
    source: int
    items: tuple[tuple[int, float], ...]


def _doc_matrix(model) -> np.ndarray:
    vectors = getattr(model, "doc_vectors", model)
    return np.asarray(vectors, dtype=np.float64)


def _unit_rows(model) -> np.ndarray:
    vectors = _doc_matrix(model)
    norms = np.linalg.norm(vectors, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ValueError(f"talk {int(zero[0])} has a zero vector; cosine is undefined")
    return vectors / norms[:, None]


def pairwise_similarities(model) -> Iterator[ScoredPair]:
    """Yield all N(N-1)/2 pairs (a < b) with their cosine similarity."""
    unit = _unit_rows(model)
    n = unit.shape[0]
    if n < 2:
        raise EmptyInputError(f"need at least 2 talks for pairwise similarity, got {n}")
    for a in range(n - 1):
        row = np.clip(unit[a + 1 :] @ unit[a], -1.0, 1.0)
        for offset, similarity in enumerate(row):
            yield ScoredPair(a=a, b=a + 1 + offset, similarity=float(similarity))


def edge_budget(n_pairs: int, fraction: float) -> int:
    """floor(fraction * n_pairs), robust to decimal fractions stored in binary."""
    if not (0.0 < fraction <= 1.0):
        raise ValueError(f"edge fraction must be in (0, 1], got {fraction}")
    return int(math.floor(fraction * n_pairs + 1e-9))


def top_fraction_edges(
    pairs: Iterable[ScoredPair], n_nodes: int, fraction: float = 0.01
) -> SimilarityGraph:
    """Keep the floor(fraction * |pairs|) strongest pairs as graph edges."""
    a_list, b_list, sims = [], [], []
    for pair in pairs:
        a_list.append(pair.a)
        b_list.append(pair.b)
        sims.append(pair.similarity)
    m = edge_budget(len(sims), fraction)
    if m == 0:
        raise EmptyInputError(
            f"edge budget floor({fraction} * {len(sims)}) is 0; "
            "increase the edge fraction or the corpus size"
        )
    a_arr = np.array(a_list, dtype=np.int64)
    b_arr = np.array(b_list, dtype=np.int64)
    sim_arr = np.array(sims, dtype=np.float64)
    # lexsort: last key is primary -> similarity desc, then a asc, then b asc.
    order = np.lexsort((b_arr, a_arr, -sim_arr))[:m]
    edges = tuple(
        ScoredPair(a=int(a_arr[i]), b=int(b_arr[i]), similarity=float(sim_arr[i]))
        for i in order
    )
    return SimilarityGraph(n_nodes=n_nodes, edges=edges, edge_fraction=fraction)


def recommend(model, source: int, n: int = 10) -> RecommendationList:
    """Top-n other talks by cosine similarity to the source talk."""
    if n < 1:
        raise ValueError(f"recommendation count must be >= 1, got {n}")
    unit = _unit_rows(model)
    total = unit.shape[0]
    if not (0 <= source < total):
        raise NotFoundError(f"talk id {source} does not exist (corpus has {total} talks)")
    sims = np.clip(unit @ unit[source], -1.0, 1.0)
    ids = np.arange(total)
    keep = ids != source
    ids, sims = ids[keep], sims[keep]
    order = np.lexsort((ids, -sims))[:n]
    return RecommendationList(
        source=source,
        items=tuple((int(ids[i]), float(sims[i])) for i in order),
    )


def neighbor_subgraph(
    graph: SimilarityGraph, model, source: int, n: int = 10
) -> SimilarityGraph:
    """The induced network on {source} + its top-n recommendations.

    The n source-to-neighbor pairs are always present as edges (with
    their cosine similarity) even when they fell below the global cut;
    edges the global graph already has are kept as-is.
    """
    recs = recommend(model, source, n)
    nodes = {source} | {talk_id for talk_id, _ in recs.items}
    induced = {(e.a, e.b): e for e in graph.edges if e.a in nodes and e.b in nodes}
    for talk_id, similarity in recs.items:
        key = (min(source, talk_id), max(source, talk_id))
        if key not in induced:
            induced[key] = ScoredPair(a=key[0], b=key[1], similarity=similarity)
    edges = sorted(induced.values(), key=lambda e: (-e.similarity, e.a, e.b))
    return SimilarityGraph(
        n_nodes=len(nodes),
        edges=tuple(edges),
        edge_fraction=graph.edge_fraction,
        node_ids=tuple(sorted(nodes)),
    )
