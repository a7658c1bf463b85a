"""Read-only HTTP API over one loaded artifact, plus optional static files.

The server never mutates the artifact: every request reads from the same
immutable snapshot, so concurrent handling needs no locks. Rebuilding
means restarting with a new artifact file.

Endpoints (all JSON, all under /api/):

    GET /api/meta                     artifact summary (counts, config)
    GET /api/talks                    all node summaries, title ascending
    GET /api/talks/{id}?n=            talk detail with n recommendations
    GET /api/talks/{id}/neighbors?n=  neighbor subgraph as a graph document
    GET /api/graph                    the full thresholded graph
    GET /api/search?q=                title substring search

Every wire shape has a schema under talkgraph/schemas/; responses are
plain JSON objects with exactly the documented fields. Errors always
use the shape {"error": {"code": ..., "message": ...}}.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Query
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .artifact import Artifact
from .errors import NotFoundError
from .simgraph import SimilarityGraph, neighbor_subgraph, recommend

SCHEMA_NAMES = (
    "meta",
    "node_summary",
    "talk_list",
    "talk_detail",
    "graph_document",
    "error",
)

_HTTP_CODES = {
    400: "bad_request",
    404: "not_found",
    405: "method_not_allowed",
}


def published_schema(name: str) -> dict:
    """Load one of the wire-format schemas shipped with the package."""
    if name not in SCHEMA_NAMES:
        raise KeyError(f"no schema named {name!r}; have {', '.join(SCHEMA_NAMES)}")
    text = resources.files("talkgraph.schemas").joinpath(f"{name}.json").read_text("utf-8")
    return json.loads(text)


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message}},
    )


def _node_summary(artifact: Artifact, talk_id: int) -> dict:
    meta = artifact.talks[talk_id]
    return {
        "id": meta.id,
        "title": meta.title,
        "speaker": meta.speaker,
        "views": meta.views,
        "sentiment_norm": artifact.sentiment.normalized[talk_id],
        "community": artifact.communities.labels[talk_id],
    }


def _graph_document(artifact: Artifact, graph: SimilarityGraph) -> dict:
    node_ids = graph.node_ids if graph.node_ids is not None else range(graph.n_nodes)
    return {
        "nodes": [_node_summary(artifact, talk_id) for talk_id in node_ids],
        "links": [
            {"source": edge.a, "target": edge.b, "similarity": edge.similarity}
            for edge in graph.edges
        ],
    }


def create_app(artifact: Artifact, static_dir: Optional[Union[str, Path]] = None) -> FastAPI:
    """Build the application serving one artifact.

    static_dir, when given, must be an existing directory; it is served
    at / (with index.html for the root) after all /api/ routes.
    """
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)

    @app.exception_handler(NotFoundError)
    async def _not_found(request, exc: NotFoundError) -> JSONResponse:
        return _error_response(404, "not_found", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request, exc: RequestValidationError) -> JSONResponse:
        parts = [f"{detail['loc'][-1]}: {detail['msg']}" for detail in exc.errors()]
        return _error_response(400, "bad_request", "; ".join(parts) or "invalid request")

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request, exc: StarletteHTTPException) -> JSONResponse:
        code = _HTTP_CODES.get(exc.status_code, "http_error")
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.get("/api/meta")
    def api_meta() -> dict:
        return {
            "format_version": artifact.format_version,
            "fingerprint": artifact.fingerprint,
            "n_talks": artifact.n_talks,
            "dim": int(artifact.doc_vectors.shape[1]),
            "n_edges": len(artifact.graph.edges),
            "edge_fraction": artifact.graph.edge_fraction,
            "n_communities": artifact.communities.n_communities,
            "modularity": artifact.communities.modularity,
            "config": artifact.config,
        }

    @app.get("/api/talks")
    def api_talks() -> list:
        order = sorted(range(artifact.n_talks), key=lambda i: (artifact.talks[i].title, i))
        return [_node_summary(artifact, talk_id) for talk_id in order]

    @app.get("/api/talks/{talk_id}")
    def api_talk_detail(talk_id: int, n: int = Query(default=10, ge=1)) -> dict:
        recs = recommend(artifact.doc_vectors, talk_id, n)
        meta = artifact.talks[talk_id]
        matched = artifact.sentiment.matched_tokens[talk_id]
        total = artifact.sentiment.total_tokens[talk_id]
        return {
            "meta": {
                "id": meta.id,
                "title": meta.title,
                "speaker": meta.speaker,
                "tags": list(meta.tags),
                "views": meta.views,
                "url": meta.url,
            },
            "sentiment": {
                "score": artifact.sentiment.scores[talk_id],
                "normalized": artifact.sentiment.normalized[talk_id],
                "matched_tokens": matched,
                "total_tokens": total,
                "coverage": matched / total if total else 0.0,
            },
            "wordcloud": [
                {"word": word, "weight": weight}
                for word, weight in artifact.clouds[talk_id].entries
            ],
            "recommendations": [
                {
                    "id": rec_id,
                    "title": artifact.talks[rec_id].title,
                    "similarity": similarity,
                }
                for rec_id, similarity in recs.items
            ],
        }

    @app.get("/api/talks/{talk_id}/neighbors")
    def api_neighbors(talk_id: int, n: int = Query(default=10, ge=1)) -> dict:
        subgraph = neighbor_subgraph(artifact.graph, artifact.doc_vectors, talk_id, n)
        return _graph_document(artifact, subgraph)

    @app.get("/api/graph")
    def api_graph() -> dict:
        return _graph_document(artifact, artifact.graph)

    @app.get("/api/search")
    def api_search(q: str = Query(default="")) -> list:
        needle = q.lower()
        if not needle:
            return []
        hits = []
        for talk_id in range(artifact.n_talks):
            title = artifact.talks[talk_id].title
            position = title.lower().find(needle)
            if position >= 0:
                hits.append((position, title, talk_id))
        hits.sort()
        return [_node_summary(artifact, talk_id) for _, _, talk_id in hits]

    if static_dir is not None:
        root = Path(static_dir)
        if not root.is_dir():
            raise ValueError(f"static directory does not exist: {root}")
        app.mount("/", StaticFiles(directory=root, html=True), name="static")

    return app
