"""Corpus ingestion: CSV parsing, metadata/transcript join, and tokenization.

The expected inputs are the two Kaggle TED CSV files: a metadata table
(title, main_speaker, tags, views, url, ...) and a transcript table
(transcript, url). Talks are joined on url and assigned dense integer ids
in metadata order so that downstream vectors and graph arrays can be
index-addressed.
"""

from __future__ import annotations

import ast
import csv
import hashlib
import io
import re
from dataclasses import dataclass

from .errors import EmptyInputError, ParseError, SchemaError

METADATA_COLUMNS = ("title", "main_speaker", "tags", "views", "url")
TRANSCRIPT_COLUMNS = ("transcript", "url")

# Single-word parenthetical spans are audience annotations in TED
# transcripts ("(Laughter)", "(Applause)"); multi-word parentheticals are
# usually real speech and are kept.
_ANNOTATION = re.compile(r"\([^\s()]+\)")

# Token characters are letters, digits, and apostrophes; everything else
# separates tokens. \w would admit underscores, so they are split out.
_SEPARATOR = re.compile(r"(?:[^\w']|_)+")


@dataclass(frozen=True)
class TalkMeta:
    id: int
    title: str
    speaker: str
    tags: tuple[str, ...]
    views: int
    url: str


@dataclass(frozen=True)
class Talk:
    meta: TalkMeta
    transcript: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    talks: tuple[Talk, ...]
    source_fingerprint: str

    def __len__(self) -> int:
        return len(self.talks)

    def __iter__(self):
        return iter(self.talks)


@dataclass(frozen=True)
class MetaRow:
    """One parsed metadata row, before ids are assigned by the join."""

    title: str
    speaker: str
    tags: tuple[str, ...]
    views: int
    url: str


@dataclass(frozen=True)
class JoinStats:
    n_talks: int
    metas_dropped: int
    transcripts_dropped: int
    duplicate_transcript_urls: int = 0


def tokenize(transcript: str) -> list[str]:
    """Split a transcript into lowercase tokens.

    Single-word parenthesized annotations are removed, the text is
    lowercased, and it is split on every character that is not a letter,
    digit, or apostrophe. Apostrophes survive inside tokens ("don't") but
    are stripped from the ends. Deterministic; empty input gives [].
    """
    text = _ANNOTATION.sub(" ", transcript).lower()
    tokens = []
    for piece in _SEPARATOR.split(text):
        piece = piece.strip("'")
        if piece:
            tokens.append(piece)
    return tokens


def _decode(data: bytes) -> io.StringIO:
    return io.StringIO(data.decode("utf-8-sig"), newline="")


def _header_index(header: list[str], required: tuple[str, ...], what: str) -> dict[str, int]:
    index = {name.strip(): i for i, name in enumerate(header)}
    for column in required:
        if column not in index:
            raise SchemaError(f"{what} is missing required column '{column}'")
    return index


def _parse_tags(field: str) -> tuple[str, ...]:
    field = field.strip()
    if not field:
        return ()
    try:
        value = ast.literal_eval(field)
        if isinstance(value, (list, tuple)):
            return tuple(str(tag).strip().lower() for tag in value)
    except (ValueError, SyntaxError):
        pass
    # Salvage quoted items from an almost-list literal.
    return tuple(m.group(1).strip().lower() for m in re.finditer(r"'([^']*)'|\"([^\"]*)\"", field) if m.group(1))


def parse_metadata(data: bytes) -> list[MetaRow]:
    """Parse the metadata CSV into rows, without assigning ids.

    Raises SchemaError when a required column is absent, and ParseError
    for malformed quoting or a non-integer views value (the message names
    the offending data row, 1-based).
    """
    reader = csv.reader(_decode(data))
    try:
        header = next(reader, None)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV header: {exc}") from exc
    if header is None:
        raise SchemaError("metadata CSV has no header row")
    columns = _header_index(header, METADATA_COLUMNS, "metadata CSV")

    rows: list[MetaRow] = []
    row_number = 0
    while True:
        try:
            record = next(reader, None)
        except csv.Error as exc:
            raise ParseError(f"malformed CSV near data row {row_number + 1}: {exc}") from exc
        if record is None:
            break
        if not record:
            continue
        row_number += 1
        if len(record) != len(header):
            raise ParseError(
                f"metadata row {row_number} has {len(record)} fields, expected {len(header)}"
            )
        views_text = record[columns["views"]].strip()
        try:
            views = int(views_text)
        except ValueError:
            raise ParseError(
                f"metadata row {row_number} has non-integer views value {views_text!r}"
            ) from None
        if views < 0:
            raise ParseError(f"metadata row {row_number} has negative views value {views}")
        rows.append(
            MetaRow(
                title=record[columns["title"]],
                speaker=record[columns["main_speaker"]],
                tags=_parse_tags(record[columns["tags"]]),
                views=views,
                url=record[columns["url"]].strip(),
            )
        )
    return rows


def parse_transcripts(data: bytes) -> tuple[dict[str, str], int]:
    """Parse the transcript CSV into a url -> transcript map.

    Duplicate urls keep the first occurrence; the number of discarded
    duplicates is returned alongside the map.
    """
    reader = csv.reader(_decode(data))
    try:
        header = next(reader, None)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV header: {exc}") from exc
    if header is None:
        raise SchemaError("transcript CSV has no header row")
    columns = _header_index(header, TRANSCRIPT_COLUMNS, "transcript CSV")

    by_url: dict[str, str] = {}
    duplicates = 0
    row_number = 0
    while True:
        try:
            record = next(reader, None)
        except csv.Error as exc:
            raise ParseError(f"malformed CSV near data row {row_number + 1}: {exc}") from exc
        if record is None:
            break
        if not record:
            continue
        row_number += 1
        if len(record) != len(header):
            raise ParseError(
                f"transcript row {row_number} has {len(record)} fields, expected {len(header)}"
            )
        url = record[columns["url"]].strip()
        if url in by_url:
            duplicates += 1
            continue
        by_url[url] = record[columns["transcript"]]
    if not by_url:
        raise EmptyInputError("transcript CSV contains no data rows")
    return by_url, duplicates


def join_corpus(
    metas: list[MetaRow],
    transcripts: dict[str, str],
    fingerprint: str = "",
) -> tuple[Corpus, JoinStats]:
    """Inner-join metadata and transcripts on url.

    Ids are assigned 0..N-1 in metadata order. Metadata rows without a
    (non-empty) transcript and transcripts without metadata are dropped;
    the counts are returned in JoinStats. An empty join is fatal.
    """
    talks: list[Talk] = []
    seen_urls: set[str] = set()
    metas_dropped = 0
    for row in metas:
        transcript = transcripts.get(row.url)
        if not transcript or row.url in seen_urls:
            metas_dropped += 1
            continue
        seen_urls.add(row.url)
        meta = TalkMeta(
            id=len(talks),
            title=row.title,
            speaker=row.speaker,
            tags=row.tags,
            views=row.views,
            url=row.url,
        )
        talks.append(Talk(meta=meta, transcript=transcript, tokens=tuple(tokenize(transcript))))
    if not talks:
        raise EmptyInputError("join produced no talks: no metadata row has a matching transcript")
    stats = JoinStats(
        n_talks=len(talks),
        metas_dropped=metas_dropped,
        transcripts_dropped=len(transcripts) - len(seen_urls),
    )
    return Corpus(talks=tuple(talks), source_fingerprint=fingerprint), stats


def fingerprint_inputs(metadata: bytes, transcripts: bytes) -> str:
    digest = hashlib.sha256()
    digest.update(len(metadata).to_bytes(8, "little"))
    digest.update(metadata)
    digest.update(transcripts)
    return digest.hexdigest()


def build_corpus(metadata: bytes, transcripts: bytes) -> tuple[Corpus, JoinStats]:
    """Parse both CSV files and join them into a fingerprinted Corpus."""
    metas = parse_metadata(metadata)
    by_url, duplicates = parse_transcripts(transcripts)
    corpus, stats = join_corpus(metas, by_url, fingerprint_inputs(metadata, transcripts))
    return corpus, JoinStats(
        n_talks=stats.n_talks,
        metas_dropped=stats.metas_dropped,
        transcripts_dropped=stats.transcripts_dropped,
        duplicate_transcript_urls=duplicates,
    )
