"""Offline reporting: delimited tables plus rendered figures for one artifact.

Everything is written as plain files so results can be inspected,
diffed, and pulled into other tools without running the server:

    talks.tsv               one row per talk (scores, community, degree)
    edges.tsv               one row per kept graph edge
    communities.tsv         one row per community with summary stats
    graph_layout.png        nodes on a 2-D projection of the doc vectors
    sentiment_histogram.png distribution of raw sentiment scores
    degree_histogram.png    distribution of graph node degrees

The layout figure projects the trained vectors onto their two largest
principal components — a deterministic stand-in for the force-directed
view the web UI provides interactively.
"""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")  # file rendering only; must run before pyplot loads
import matplotlib.pyplot as plt
import numpy as np

from .artifact import Artifact

REPORT_TABLES = ("talks.tsv", "edges.tsv", "communities.tsv")
REPORT_FIGURES = ("graph_layout.png", "sentiment_histogram.png", "degree_histogram.png")


def pca_positions(vectors: np.ndarray) -> np.ndarray:
    """Project row vectors onto their two largest principal components.

    Deterministic up to per-axis sign; a one-dimensional input gets a
    zero second axis so callers always receive n x 2.
    """
    x = np.asarray(vectors, dtype=np.float64)
    x = x - x.mean(axis=0)
    _, _, vt = np.linalg.svd(x, full_matrices=False)
    positions = x @ vt[: min(2, vt.shape[0])].T
    if positions.shape[1] < 2:
        positions = np.column_stack([positions, np.zeros(len(positions))])
    return positions


def _degrees(artifact: Artifact) -> Counter:
    degrees: Counter = Counter()
    for edge in artifact.graph.edges:
        degrees[edge.a] += 1
        degrees[edge.b] += 1
    return degrees


def _cell(value) -> str:
    return "" if value is None else str(value)


def _write_tsv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _talks_table(artifact: Artifact, path: Path) -> None:
    degrees = _degrees(artifact)
    rows = [
        [
            talk.id,
            talk.title,
            talk.speaker,
            talk.views,
            _cell(artifact.sentiment.scores[talk.id]),
            _cell(artifact.sentiment.normalized[talk.id]),
            artifact.communities.labels[talk.id],
            degrees[talk.id],
        ]
        for talk in artifact.talks
    ]
    _write_tsv(
        path,
        ["id", "title", "speaker", "views", "sentiment", "sentiment_norm", "community", "degree"],
        rows,
    )


def _edges_table(artifact: Artifact, path: Path) -> None:
    rows = [[edge.a, edge.b, edge.similarity] for edge in artifact.graph.edges]
    _write_tsv(path, ["a", "b", "similarity"], rows)


def _communities_table(artifact: Artifact, path: Path) -> None:
    labels = artifact.communities.labels
    members: dict[int, list[int]] = {}
    for talk_id, community in labels.items():
        members.setdefault(community, []).append(talk_id)
    rows = []
    for community in sorted(members):
        talk_ids = members[community]
        normalized = [
            artifact.sentiment.normalized[i]
            for i in talk_ids
            if artifact.sentiment.normalized[i] is not None
        ]
        top = max(talk_ids, key=lambda i: (artifact.talks[i].views, -i))
        rows.append(
            [
                community,
                len(talk_ids),
                sum(artifact.talks[i].views for i in talk_ids),
                _cell(sum(normalized) / len(normalized) if normalized else None),
                artifact.talks[top].title,
            ]
        )
    _write_tsv(
        path, ["community", "size", "total_views", "mean_sentiment_norm", "top_title"], rows
    )


def _layout_figure(artifact: Artifact, path: Path) -> None:
    positions = pca_positions(artifact.doc_vectors)
    views = np.array([talk.views for talk in artifact.talks], dtype=np.float64)
    sizes = 12.0 + 60.0 * np.sqrt(views / views.max()) if views.max() > 0 else 20.0
    colors = [artifact.communities.labels[talk.id] for talk in artifact.talks]

    fig, ax = plt.subplots(figsize=(8, 8))
    for edge in artifact.graph.edges:
        ax.plot(
            positions[[edge.a, edge.b], 0],
            positions[[edge.a, edge.b], 1],
            color="0.8",
            linewidth=0.5,
            zorder=1,
        )
    scatter = ax.scatter(
        positions[:, 0], positions[:, 1], s=sizes, c=colors, cmap="tab20", zorder=2
    )
    ax.set_title("similarity graph, communities on a 2-D vector projection")
    ax.set_xlabel("component 1")
    ax.set_ylabel("component 2")
    fig.colorbar(scatter, ax=ax, label="community")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _sentiment_figure(artifact: Artifact, path: Path) -> None:
    scores = [s for s in artifact.sentiment.scores if s is not None]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if scores:
        ax.hist(scores, bins=min(30, max(5, len(scores))), color="#4878cf", edgecolor="white")
    ax.set_xlabel("average happiness (1-9)")
    ax.set_ylabel("talks")
    ax.set_title("sentiment score distribution")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _degree_figure(artifact: Artifact, path: Path) -> None:
    degrees = _degrees(artifact)
    counts = Counter(degrees[talk.id] for talk in artifact.talks)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(list(counts.keys()), list(counts.values()), color="#4878cf")
    ax.set_xlabel("degree in the kept-edge graph")
    ax.set_ylabel("talks")
    ax.set_title("node degree distribution")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(artifact: Artifact, out_dir: Union[str, Path]) -> list[Path]:
    """Write all tables and figures into out_dir; returns the paths written."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    _talks_table(artifact, root / "talks.tsv")
    _edges_table(artifact, root / "edges.tsv")
    _communities_table(artifact, root / "communities.tsv")
    _layout_figure(artifact, root / "graph_layout.png")
    _sentiment_figure(artifact, root / "sentiment_histogram.png")
    _degree_figure(artifact, root / "degree_histogram.png")
    return [root / name for name in REPORT_TABLES + REPORT_FIGURES]
