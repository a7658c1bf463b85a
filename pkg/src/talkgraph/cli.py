"""Command-line pipeline orchestration.

Subcommands mirror the pipeline stages:

    ingest   CSV pair -> corpus file
    build    corpus file + lexicon -> artifact file (all stages)
    query    print one talk's recommendation list
    serve    read-only HTTP API (+ optional static UI) over an artifact
    report   delimited tables + figures rendered from an artifact

Results go to stdout, diagnostics and progress to stderr. Commands that
write a derived file also write `<out>.manifest`, a JSON record of every
resolved parameter (with its source: flag, env, or default), input
fingerprints, stage timings, and the output path — enough to audit or
reproduce the run. Builds are bit-reproducible single-worker.
"""

from __future__ import annotations

import hashlib
import json
import socket
import time
from pathlib import Path

import click
from click.core import ParameterSource

from .artifact import load_artifact, load_corpus, save_artifact, save_corpus
from .corpus import build_corpus
from .embedding import TrainConfig
from .errors import TalkgraphError
from .pipeline import BuildOptions, build_artifact
from .report import write_report
from .simgraph import recommend

_SOURCE_NAMES = {
    ParameterSource.COMMANDLINE: "flag",
    ParameterSource.ENVIRONMENT: "env",
    ParameterSource.DEFAULT: "default",
    ParameterSource.DEFAULT_MAP: "default",
}


def _jsonable(value):
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, tuple):
        return list(value)
    return value


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(
    ctx: click.Context,
    output: Path,
    inputs: dict[str, str],
    timings: dict[str, float],
    manifest_path: Path,
    **extra,
) -> None:
    parameters = {
        name: {
            "value": _jsonable(value),
            "source": _SOURCE_NAMES.get(ctx.get_parameter_source(name), "default"),
        }
        for name, value in sorted(ctx.params.items())
    }
    manifest = {
        "subcommand": ctx.command.name,
        "parameters": parameters,
        "inputs": inputs,
        "timings": {stage: round(seconds, 6) for stage, seconds in timings.items()},
        "output": str(output),
        **extra,
    }
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", "utf-8")


def _echo_timings(timings: dict[str, float]) -> None:
    for stage, seconds in timings.items():
        click.echo(f"  {stage}: {seconds:.2f}s", err=True)


def _parse_band(ctx, param, value):
    if value.strip().lower() in ("none", "off"):
        return None
    parts = value.split(",")
    if len(parts) != 2:
        raise click.BadParameter("expected LOW,HIGH (e.g. 4,6) or 'none'")
    try:
        band = (float(parts[0]), float(parts[1]))
    except ValueError:
        raise click.BadParameter(f"could not parse {value!r} as two numbers")
    if not (1.0 <= band[0] < band[1] <= 9.0):
        raise click.BadParameter(f"need 1 <= LOW < HIGH <= 9, got {value!r}")
    return band


@click.group()
def main() -> None:
    """Transcript-driven talk explorer: ingest, build, query, serve, report."""


@main.command()
@click.option(
    "--main",
    "main_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Talk metadata CSV.",
)
@click.option(
    "--transcripts",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Transcript CSV.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Corpus file to write.",
)
@click.pass_context
def ingest(ctx: click.Context, main_path: Path, transcripts: Path, out: Path) -> None:
    """Parse and join the two CSV files into a corpus file."""
    timings: dict[str, float] = {}
    started = time.perf_counter()
    try:
        corpus, stats = build_corpus(main_path.read_bytes(), transcripts.read_bytes())
    except TalkgraphError as error:
        raise click.ClickException(str(error))
    timings["parse_join"] = time.perf_counter() - started

    started = time.perf_counter()
    save_corpus(corpus, out)
    timings["save"] = time.perf_counter() - started

    _write_manifest(
        ctx,
        out,
        inputs={"main": _sha256(main_path), "transcripts": _sha256(transcripts)},
        timings=timings,
        manifest_path=Path(f"{out}.manifest"),
        fingerprint=corpus.source_fingerprint,
    )
    _echo_timings(timings)
    click.echo(f"talks: {stats.n_talks}")
    click.echo(f"metadata rows dropped (no usable transcript): {stats.metas_dropped}")
    click.echo(f"transcript rows dropped (no metadata): {stats.transcripts_dropped}")
    click.echo(f"duplicate transcript urls ignored: {stats.duplicate_transcript_urls}")
    click.echo(f"fingerprint: {corpus.source_fingerprint}")
    click.echo(f"wrote {out}")


@main.command()
@click.option(
    "--in",
    "corpus_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Corpus file from `ingest`.",
)
@click.option(
    "--lexicon",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Tab-separated happiness lexicon.",
)
@click.option(
    "--band",
    default="4,6",
    callback=_parse_band,
    show_default=True,
    help="Open neutral interval LOW,HIGH excluded from the lexicon; 'none' keeps every word.",
)
@click.option("--dim", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--window", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--epochs", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--negatives", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--lr", type=click.FloatRange(min=0, min_open=True), default=0.025, show_default=True)
@click.option("--min-count", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option(
    "--edge-fraction",
    type=click.FloatRange(min=0, max=1, min_open=True),
    default=0.01,
    show_default=True,
    help="Fraction of all talk pairs kept as graph edges.",
)
@click.option("--cloud-size", type=click.IntRange(min=1), default=30, show_default=True)
@click.option(
    "--resolution",
    type=click.FloatRange(min=0, min_open=True),
    default=1.0,
    show_default=True,
    help="Community detection resolution.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Artifact file to write.",
)
@click.pass_context
def build(
    ctx: click.Context,
    corpus_path: Path,
    lexicon: Path,
    band,
    dim: int,
    window: int,
    epochs: int,
    negatives: int,
    lr: float,
    min_count: int,
    seed: int,
    workers: int,
    edge_fraction: float,
    cloud_size: int,
    resolution: float,
    out: Path,
) -> None:
    """Run every pipeline stage over a corpus and write the artifact."""
    options = BuildOptions(
        train=TrainConfig(
            dim=dim,
            window=window,
            epochs=epochs,
            negatives=negatives,
            initial_lr=lr,
            min_count=min_count,
            seed=seed,
        ),
        band=band,
        cloud_size=cloud_size,
        edge_fraction=edge_fraction,
        resolution=resolution,
        workers=workers,
    )

    timings: dict[str, float] = {}
    started = time.perf_counter()
    corpus = load_corpus(corpus_path)
    timings["load"] = time.perf_counter() - started

    try:
        artifact, stage_timings = build_artifact(corpus, lexicon.read_bytes(), options)
    except (TalkgraphError, ValueError, ArithmeticError) as error:
        raise click.ClickException(str(error))
    timings.update(stage_timings)

    started = time.perf_counter()
    save_artifact(artifact, out)
    timings["save"] = time.perf_counter() - started

    _write_manifest(
        ctx,
        out,
        inputs={"corpus": _sha256(corpus_path), "lexicon": _sha256(lexicon)},
        timings=timings,
        manifest_path=Path(f"{out}.manifest"),
        fingerprint=artifact.fingerprint,
    )
    _echo_timings(timings)
    click.echo(f"talks: {artifact.n_talks}")
    click.echo(f"edges: {len(artifact.graph.edges)}")
    click.echo(f"communities: {artifact.communities.n_communities}")
    click.echo(f"modularity: {artifact.communities.modularity:.4f}")
    click.echo(f"wrote {out}")


@main.command()
@click.option(
    "--artifact",
    "artifact_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    envvar="TALKGRAPH_ARTIFACT",
)
@click.option("--title", required=True, help="Exact title, or an unambiguous substring.")
@click.option("--n", "--top-n", "n", type=click.IntRange(min=1), default=10, show_default=True)
def query(artifact_path: Path, title: str, n: int) -> None:
    """Print a talk's recommendations, most to least similar."""
    artifact = load_artifact(artifact_path)
    exact = [talk.id for talk in artifact.talks if talk.title == title]
    if len(exact) == 1:
        target = exact[0]
    else:
        needle = title.lower()
        matches = [talk.id for talk in artifact.talks if needle in talk.title.lower()]
        if not matches:
            raise click.ClickException(f"no talk title matches {title!r}")
        if len(matches) > 1:
            listing = "\n".join(f"  {artifact.talks[i].title}" for i in matches)
            raise click.ClickException(
                f"title {title!r} is ambiguous; it matches {len(matches)} talks:\n{listing}"
            )
        target = matches[0]

    click.echo(f"recommendations for: {artifact.talks[target].title}", err=True)
    recs = recommend(artifact.doc_vectors, target, n=n)
    for rank, (talk_id, similarity) in enumerate(recs.items, start=1):
        click.echo(f"{rank}. {artifact.talks[talk_id].title} — {similarity:.4f}")


@main.command()
@click.option(
    "--artifact",
    "artifact_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    envvar="TALKGRAPH_ARTIFACT",
)
@click.option(
    "--port",
    type=click.IntRange(min=0, max=65535),
    default=8000,
    show_default=True,
    envvar="TALKGRAPH_PORT",
    help="0 asks the OS for a free port (printed on startup).",
)
@click.option(
    "--static-dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    default=None,
    help="Directory served at / (the web UI bundle).",
)
def serve(artifact_path: Path, port: int, static_dir) -> None:
    """Serve the read-only HTTP API over one artifact."""
    import uvicorn

    from .server import create_app

    artifact = load_artifact(artifact_path)
    app = create_app(artifact, static_dir=static_dir)
    click.echo(f"loaded {artifact_path} ({artifact.n_talks} talks)", err=True)

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind(("127.0.0.1", port))
    except OSError as error:
        sock.close()
        raise click.ClickException(f"cannot bind port {port}: {error}")
    bound_port = sock.getsockname()[1]
    click.echo(f"http://127.0.0.1:{bound_port}")

    config = uvicorn.Config(app, log_level="warning", access_log=False)
    uvicorn.Server(config).run(sockets=[sock])


@main.command()
@click.option(
    "--artifact",
    "artifact_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    envvar="TALKGRAPH_ARTIFACT",
)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False, path_type=Path),
    required=True,
    help="Directory for the tables and figures (created if missing).",
)
@click.pass_context
def report(ctx: click.Context, artifact_path: Path, out_dir: Path) -> None:
    """Render delimited tables and figures from an artifact."""
    artifact = load_artifact(artifact_path)
    timings: dict[str, float] = {}
    started = time.perf_counter()
    written = write_report(artifact, out_dir)
    timings["report"] = time.perf_counter() - started
    _write_manifest(
        ctx,
        out_dir,
        inputs={"artifact": _sha256(artifact_path)},
        timings=timings,
        manifest_path=out_dir / "report.manifest",
    )
    _echo_timings(timings)
    for path in written:
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
