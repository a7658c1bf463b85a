"""Versioned binary container for pipeline outputs.

One file bundles everything the server needs, so the expensive build is
decoupled from read-only serving. Layout:

    magic   8 bytes  b"TALKGRPH"
    header  <IIIII   format_version, kind, n_talks, dim, n_sections
    then n_sections of:
        <H   name length
        ...  section name (utf-8)
        <Q   payload length
        ...  payload
        <I   CRC-32 of the payload

Two kinds share the container: an ingested corpus (kind 1: talk metadata,
transcripts, fingerprint — tokens are recomputed on load because the
tokenizer is deterministic) and a full build artifact (kind 2: talks,
sentiment, word clouds, doc vectors, graph, communities, config,
fingerprint). Serialization is canonical — fixed section order, sorted
JSON keys, little-endian scalars — so identical contents give identical
bytes, and save(load(path)) reproduces the file exactly.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .community import CommunityAssignment
from .corpus import Corpus, Talk, TalkMeta, tokenize
from .errors import (
    ArtifactChecksumError,
    ArtifactStructureError,
    ArtifactTruncatedError,
    ArtifactVersionError,
)
from .simgraph import ScoredPair, SimilarityGraph
from .tfidf import WordCloud

MAGIC = b"TALKGRPH"
FORMAT_VERSION = 1
KIND_CORPUS = 1
KIND_ARTIFACT = 2

_HEADER = struct.Struct("<IIIII")
_CORPUS_SECTIONS = ("talks", "transcripts", "fingerprint")
_ARTIFACT_SECTIONS = (
    "talks",
    "sentiment",
    "clouds",
    "vectors",
    "graph",
    "communities",
    "config",
    "fingerprint",
)


@dataclass(frozen=True)
class SentimentTable:
    """Per-talk sentiment, indexed by talk id; None means no lexicon hits."""

    scores: tuple[Optional[float], ...]
    normalized: tuple[Optional[float], ...]
    matched_tokens: tuple[int, ...]
    total_tokens: tuple[int, ...]


@dataclass(frozen=True)
class Artifact:
    format_version: int
    fingerprint: str
    talks: tuple[TalkMeta, ...]
    sentiment: SentimentTable
    clouds: tuple[WordCloud, ...]
    doc_vectors: np.ndarray
    graph: SimilarityGraph
    communities: CommunityAssignment
    config: dict

    @property
    def n_talks(self) -> int:
        return len(self.talks)


def _canonical_json(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )


def _write_section(chunks: list[bytes], name: str, payload: bytes) -> None:
    encoded = name.encode("utf-8")
    chunks.append(struct.pack("<H", len(encoded)))
    chunks.append(encoded)
    chunks.append(struct.pack("<Q", len(payload)))
    chunks.append(payload)
    chunks.append(struct.pack("<I", zlib.crc32(payload)))


class _Reader:
    def __init__(self, data: bytes, path: str):
        self.data = data
        self.offset = 0
        self.path = path

    def take(self, n: int) -> bytes:
        if self.offset + n > len(self.data):
            raise ArtifactTruncatedError(
                f"{self.path}: file ends after {len(self.data)} bytes, "
                f"needed {self.offset + n}"
            )
        piece = self.data[self.offset : self.offset + n]
        self.offset += n
        return piece

    def read_sections(self, count: int) -> dict[str, bytes]:
        sections: dict[str, bytes] = {}
        for _ in range(count):
            (name_len,) = struct.unpack("<H", self.take(2))
            name = self.take(name_len).decode("utf-8")
            (payload_len,) = struct.unpack("<Q", self.take(8))
            payload = self.take(payload_len)
            (crc,) = struct.unpack("<I", self.take(4))
            if crc != zlib.crc32(payload):
                raise ArtifactChecksumError(
                    f"{self.path}: CRC mismatch in section '{name}'"
                )
            sections[name] = payload
        if self.offset != len(self.data):
            raise ArtifactStructureError(
                f"{self.path}: {len(self.data) - self.offset} trailing bytes after sections"
            )
        return sections


def _read_header(reader: _Reader, expected_kind: int) -> tuple[int, int, int]:
    magic = reader.take(len(MAGIC))
    if magic != MAGIC:
        raise ArtifactStructureError(f"{reader.path}: not a talkgraph file (bad magic)")
    version, kind, n_talks, dim, n_sections = _HEADER.unpack(reader.take(_HEADER.size))
    if version != FORMAT_VERSION:
        raise ArtifactVersionError(
            f"{reader.path}: format version {version} not supported (expected {FORMAT_VERSION})"
        )
    if kind != expected_kind:
        names = {KIND_CORPUS: "corpus", KIND_ARTIFACT: "build artifact"}
        raise ArtifactStructureError(
            f"{reader.path}: file kind is {names.get(kind, kind)!r}, "
            f"expected {names[expected_kind]!r}"
        )
    return n_talks, dim, n_sections


def _require(sections: dict[str, bytes], required: tuple[str, ...], path: str) -> None:
    for name in required:
        if name not in sections:
            raise ArtifactStructureError(f"{path}: missing required section '{name}'")
    extras = [name for name in sections if name not in required]
    if extras:
        raise ArtifactStructureError(f"{path}: unknown section '{extras[0]}'")


def _talks_payload(talks: tuple[TalkMeta, ...]) -> bytes:
    return _canonical_json(
        [
            {
                "id": t.id,
                "title": t.title,
                "speaker": t.speaker,
                "tags": list(t.tags),
                "views": t.views,
                "url": t.url,
            }
            for t in talks
        ]
    )


def _talks_from_payload(payload: bytes, path: str) -> tuple[TalkMeta, ...]:
    rows = json.loads(payload)
    talks = tuple(
        TalkMeta(
            id=row["id"],
            title=row["title"],
            speaker=row["speaker"],
            tags=tuple(row["tags"]),
            views=row["views"],
            url=row["url"],
        )
        for row in rows
    )
    for i, talk in enumerate(talks):
        if talk.id != i:
            raise ArtifactStructureError(
                f"{path}: talk ids are not dense (position {i} holds id {talk.id})"
            )
    return talks


def save_corpus(corpus: Corpus, path: Union[str, Path]) -> None:
    metas = tuple(talk.meta for talk in corpus.talks)
    transcripts = [talk.transcript for talk in corpus.talks]
    chunks = [MAGIC, _HEADER.pack(FORMAT_VERSION, KIND_CORPUS, len(metas), 0, 3)]
    _write_section(chunks, "talks", _talks_payload(metas))
    _write_section(chunks, "transcripts", _canonical_json(transcripts))
    _write_section(chunks, "fingerprint", corpus.source_fingerprint.encode("utf-8"))
    Path(path).write_bytes(b"".join(chunks))


def load_corpus(path: Union[str, Path]) -> Corpus:
    name = str(path)
    reader = _Reader(Path(path).read_bytes(), name)
    n_talks, _, n_sections = _read_header(reader, KIND_CORPUS)
    sections = reader.read_sections(n_sections)
    _require(sections, _CORPUS_SECTIONS, name)
    metas = _talks_from_payload(sections["talks"], name)
    transcripts = json.loads(sections["transcripts"])
    if len(metas) != n_talks or len(transcripts) != n_talks:
        raise ArtifactStructureError(
            f"{name}: header says {n_talks} talks, sections disagree"
        )
    talks = tuple(
        Talk(meta=meta, transcript=text, tokens=tuple(tokenize(text)))
        for meta, text in zip(metas, transcripts)
    )
    return Corpus(talks=talks, source_fingerprint=sections["fingerprint"].decode("utf-8"))


def _vectors_payload(vectors: np.ndarray) -> bytes:
    n, dim = vectors.shape
    data = np.ascontiguousarray(vectors, dtype="<f4")
    return struct.pack("<II", n, dim) + data.tobytes()


def _vectors_from_payload(payload: bytes, path: str) -> np.ndarray:
    if len(payload) < 8:
        raise ArtifactTruncatedError(f"{path}: vectors section too short")
    n, dim = struct.unpack("<II", payload[:8])
    expected = 8 + n * dim * 4
    if len(payload) != expected:
        raise ArtifactStructureError(
            f"{path}: vectors section is {len(payload)} bytes, expected {expected}"
        )
    flat = np.frombuffer(payload, dtype="<f4", offset=8)
    return flat.reshape(n, dim).copy()


def _graph_payload(graph: SimilarityGraph) -> bytes:
    n_edges = len(graph.edges)
    a = np.fromiter((e.a for e in graph.edges), dtype="<u4", count=n_edges)
    b = np.fromiter((e.b for e in graph.edges), dtype="<u4", count=n_edges)
    sim = np.fromiter((e.similarity for e in graph.edges), dtype="<f8", count=n_edges)
    header = struct.pack("<IdQ", graph.n_nodes, graph.edge_fraction, n_edges)
    return header + a.tobytes() + b.tobytes() + sim.tobytes()


def _graph_from_payload(payload: bytes, path: str) -> SimilarityGraph:
    head = struct.Struct("<IdQ")
    if len(payload) < head.size:
        raise ArtifactTruncatedError(f"{path}: graph section too short")
    n_nodes, fraction, n_edges = head.unpack(payload[: head.size])
    expected = head.size + n_edges * (4 + 4 + 8)
    if len(payload) != expected:
        raise ArtifactStructureError(
            f"{path}: graph section is {len(payload)} bytes, expected {expected}"
        )
    offset = head.size
    a = np.frombuffer(payload, dtype="<u4", count=n_edges, offset=offset)
    offset += n_edges * 4
    b = np.frombuffer(payload, dtype="<u4", count=n_edges, offset=offset)
    offset += n_edges * 4
    sim = np.frombuffer(payload, dtype="<f8", count=n_edges, offset=offset)
    edges = tuple(
        ScoredPair(a=int(a[i]), b=int(b[i]), similarity=float(sim[i]))
        for i in range(n_edges)
    )
    return SimilarityGraph(n_nodes=n_nodes, edges=edges, edge_fraction=fraction)


def _validate_artifact(artifact: Artifact, path: str) -> None:
    n = artifact.n_talks
    if artifact.doc_vectors.shape[0] != n:
        raise ArtifactStructureError(
            f"{path}: {artifact.doc_vectors.shape[0]} vector rows for {n} talks"
        )
    table = artifact.sentiment
    for field_name, values in (
        ("scores", table.scores),
        ("normalized", table.normalized),
        ("matched_tokens", table.matched_tokens),
        ("total_tokens", table.total_tokens),
    ):
        if len(values) != n:
            raise ArtifactStructureError(
                f"{path}: sentiment {field_name} has {len(values)} entries for {n} talks"
            )
    if len(artifact.clouds) != n:
        raise ArtifactStructureError(
            f"{path}: {len(artifact.clouds)} word clouds for {n} talks"
        )
    for i, cloud in enumerate(artifact.clouds):
        if cloud.talk_id != i:
            raise ArtifactStructureError(f"{path}: cloud at position {i} has id {cloud.talk_id}")
    if artifact.graph.n_nodes != n:
        raise ArtifactStructureError(
            f"{path}: graph has {artifact.graph.n_nodes} nodes for {n} talks"
        )
    for e in artifact.graph.edges:
        if not (0 <= e.a < n and 0 <= e.b < n):
            raise ArtifactStructureError(f"{path}: graph edge ({e.a}, {e.b}) out of range")
    if set(artifact.communities.labels) != set(range(n)):
        raise ArtifactStructureError(f"{path}: community labels do not cover talks 0..{n - 1}")


def save_artifact(artifact: Artifact, path: Union[str, Path]) -> None:
    name = str(path)
    _validate_artifact(artifact, name)
    table = artifact.sentiment
    sentiment_payload = _canonical_json(
        {
            "scores": list(table.scores),
            "normalized": list(table.normalized),
            "matched_tokens": list(table.matched_tokens),
            "total_tokens": list(table.total_tokens),
        }
    )
    clouds_payload = _canonical_json(
        [[[word, weight] for word, weight in cloud.entries] for cloud in artifact.clouds]
    )
    communities_payload = _canonical_json(
        {
            "labels": [artifact.communities.labels[i] for i in range(artifact.n_talks)],
            "modularity": artifact.communities.modularity,
        }
    )
    chunks = [
        MAGIC,
        _HEADER.pack(
            FORMAT_VERSION,
            KIND_ARTIFACT,
            artifact.n_talks,
            artifact.doc_vectors.shape[1],
            len(_ARTIFACT_SECTIONS),
        ),
    ]
    _write_section(chunks, "talks", _talks_payload(artifact.talks))
    _write_section(chunks, "sentiment", sentiment_payload)
    _write_section(chunks, "clouds", clouds_payload)
    _write_section(chunks, "vectors", _vectors_payload(artifact.doc_vectors))
    _write_section(chunks, "graph", _graph_payload(artifact.graph))
    _write_section(chunks, "communities", communities_payload)
    _write_section(chunks, "config", _canonical_json(artifact.config))
    _write_section(chunks, "fingerprint", artifact.fingerprint.encode("utf-8"))
    Path(path).write_bytes(b"".join(chunks))


def load_artifact(path: Union[str, Path]) -> Artifact:
    name = str(path)
    reader = _Reader(Path(path).read_bytes(), name)
    n_talks, dim, n_sections = _read_header(reader, KIND_ARTIFACT)
    sections = reader.read_sections(n_sections)
    _require(sections, _ARTIFACT_SECTIONS, name)

    talks = _talks_from_payload(sections["talks"], name)
    raw = json.loads(sections["sentiment"])
    sentiment = SentimentTable(
        scores=tuple(raw["scores"]),
        normalized=tuple(raw["normalized"]),
        matched_tokens=tuple(raw["matched_tokens"]),
        total_tokens=tuple(raw["total_tokens"]),
    )
    clouds = tuple(
        WordCloud(talk_id=i, entries=tuple((word, weight) for word, weight in entries))
        for i, entries in enumerate(json.loads(sections["clouds"]))
    )
    vectors = _vectors_from_payload(sections["vectors"], name)
    if vectors.shape != (n_talks, dim):
        raise ArtifactStructureError(
            f"{name}: header says {n_talks}x{dim} vectors, section has {vectors.shape}"
        )
    graph = _graph_from_payload(sections["graph"], name)
    raw = json.loads(sections["communities"])
    communities = CommunityAssignment(
        labels={i: label for i, label in enumerate(raw["labels"])},
        modularity=raw["modularity"],
    )
    artifact = Artifact(
        format_version=FORMAT_VERSION,
        fingerprint=sections["fingerprint"].decode("utf-8"),
        talks=talks,
        sentiment=sentiment,
        clouds=clouds,
        doc_vectors=vectors,
        graph=graph,
        communities=communities,
        config=json.loads(sections["config"]),
    )
    _validate_artifact(artifact, name)
    return artifact
