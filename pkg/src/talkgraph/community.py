"""Community detection on the similarity graph.

Weighted Newman modularity is the objective; the optimizer is the
standard two-phase greedy method: repeated local node moves (in fixed
ascending node order, for determinism) until no move improves modularity
by more than a small threshold, then aggregation of communities into
super-nodes, repeated until stable. Edge weights are the cosine
similarities. Nodes with no edges keep singleton communities.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from .errors import EmptyInputError
from .simgraph import SimilarityGraph

# A move must beat staying put by this much to be applied; guards against
# floating-point ping-pong between equal-modularity states.
_MIN_GAIN = 1e-7


@dataclass(frozen=True)
class CommunityAssignment:
    """labels: talk id -> dense community id (0..C-1, ordered by smallest member)."""

    labels: dict[int, int]
    modularity: float

    @property
    def n_communities(self) -> int:
        return len(set(self.labels.values()))


def _graph_nodes(graph: SimilarityGraph) -> list[int]:
    if graph.node_ids is not None:
        return list(graph.node_ids)
    return list(range(graph.n_nodes))


def modularity(
    graph: SimilarityGraph, labels: dict[int, int], resolution: float = 1.0
) -> float:
    """Q = sum_c [in_c/(2m) - resolution * (tot_c/(2m))^2] with similarity weights.

    in_c counts every intra-community edge twice (both directions of the
    undirected edge); tot_c is the sum of member weighted degrees; m is
    the total edge weight.
    """
    if not graph.edges:
        raise EmptyInputError("modularity of an edgeless graph is undefined")
    nodes = _graph_nodes(graph)
    missing = [node for node in nodes if node not in labels]
    if missing:
        raise ValueError(f"labels do not cover node {missing[0]}")

    m = sum(e.similarity for e in graph.edges)
    if m <= 0.0:
        raise ValueError(f"total edge weight must be positive, got {m}")

    degree: dict[int, float] = defaultdict(float)
    internal: dict[int, float] = defaultdict(float)
    for e in graph.edges:
        degree[e.a] += e.similarity
        degree[e.b] += e.similarity
        if labels[e.a] == labels[e.b]:
            internal[labels[e.a]] += 2.0 * e.similarity
    total: dict[int, float] = defaultdict(float)
    for node in nodes:
        total[labels[node]] += degree[node]

    two_m = 2.0 * m
    q = 0.0
    for community in total:
        q += internal.get(community, 0.0) / two_m
        q -= resolution * (total[community] / two_m) ** 2
    return q


def _one_level(
    adj: dict[int, dict[int, float]],
    m: float,
    resolution: float,
    on_sweep_end=None,
) -> tuple[dict[int, int], bool]:
    """Local-move phase: greedy single-node moves in ascending node order.

    Returns (community of each node, whether any move happened). The
    gain of placing node x (degree k) into community C with incident
    weight k_in and running total tot is (k_in - r*tot*k/(2m)) / m; x
    moves only when the best candidate beats staying by > _MIN_GAIN.
    """
    nodes = sorted(adj)
    com = {x: x for x in nodes}
    k = {x: sum(w for y, w in adj[x].items() if y != x) + 2.0 * adj[x].get(x, 0.0) for x in nodes}
    tot = {x: k[x] for x in nodes}
    two_m = 2.0 * m

    moved_any = False
    while True:
        moved = False
        for x in nodes:
            current = com[x]
            tot[current] -= k[x]
            weights: dict[int, float] = defaultdict(float)
            for y, w in adj[x].items():
                if y != x:
                    weights[com[y]] += w
            stay_gain = (weights.get(current, 0.0) - resolution * tot[current] * k[x] / two_m) / m
            best_com, best_gain = current, stay_gain
            for candidate in sorted(weights):
                if candidate == current:
                    continue
                gain = (weights[candidate] - resolution * tot[candidate] * k[x] / two_m) / m
                if gain > best_gain + _MIN_GAIN:
                    best_com, best_gain = candidate, gain
            com[x] = best_com
            tot[best_com] += k[x]
            if best_com != current:
                moved = True
                moved_any = True
        if on_sweep_end is not None:
            on_sweep_end(com)
        if not moved:
            return com, moved_any


def _aggregate(
    adj: dict[int, dict[int, float]], com: dict[int, int]
) -> dict[int, dict[int, float]]:
    """Collapse each community into one super-node; internal weight becomes a self-loop."""
    new_adj: dict[int, dict[int, float]] = {c: defaultdict(float) for c in set(com.values())}
    for x, neighbors in adj.items():
        cx = com[x]
        for y, w in neighbors.items():
            if y < x:
                continue  # undirected: visit each pair once (self-loops have y == x)
            cy = com[y]
            if cx == cy:
                new_adj[cx][cx] += w
            else:
                new_adj[cx][cy] += w
                new_adj[cy][cx] += w
    return {c: dict(neighbors) for c, neighbors in new_adj.items()}


def _dense_labels(mapping: dict[int, int]) -> dict[int, int]:
    """Relabel communities 0..C-1 ordered by their smallest member node id."""
    smallest: dict[int, int] = {}
    for node in sorted(mapping):
        smallest.setdefault(mapping[node], node)
    order = sorted(smallest, key=smallest.get)
    dense = {community: i for i, community in enumerate(order)}
    return {node: dense[community] for node, community in mapping.items()}


def louvain(
    graph: SimilarityGraph,
    resolution: float = 1.0,
    seed: Optional[int] = None,
    q_trace: Optional[list[float]] = None,
) -> CommunityAssignment:
    """Two-phase greedy modularity maximization.

    Deterministic: nodes are visited in ascending order and ties prefer
    the current community. `seed` is reserved for an optional shuffled
    visiting order and is unused in the default deterministic mode.
    When q_trace is a list, the modularity of the partition (projected
    onto the original nodes) is appended after every local-move sweep.
    """
    del seed  # reserved; the default visiting order is fixed ascending
    if not graph.edges:
        raise EmptyInputError("community detection needs at least one edge")
    nodes = _graph_nodes(graph)

    adj: dict[int, dict[int, float]] = {node: {} for node in nodes}
    for e in graph.edges:
        adj[e.a][e.b] = adj[e.a].get(e.b, 0.0) + e.similarity
        adj[e.b][e.a] = adj[e.b].get(e.a, 0.0) + e.similarity
    m = sum(e.similarity for e in graph.edges)
    if m <= 0.0:
        raise ValueError(f"total edge weight must be positive, got {m}")

    mapping = {node: node for node in nodes}

    def on_sweep_end(com: dict[int, int]) -> None:
        if q_trace is not None:
            projected = {node: com[mapping[node]] for node in nodes}
            q_trace.append(modularity(graph, projected, resolution))

    while True:
        com, moved_any = _one_level(adj, m, resolution, on_sweep_end)
        if not moved_any:
            break
        mapping = {node: com[mapping[node]] for node in nodes}
        adj = _aggregate(adj, com)

    labels = _dense_labels(mapping)
    return CommunityAssignment(labels=labels, modularity=modularity(graph, labels))
