"""Shared fixtures: a small synthetic corpus, lexicon, and built artifact."""

import csv
import io

import pytest

from talkgraph.artifact import save_artifact
from talkgraph.corpus import build_corpus
from talkgraph.embedding import TrainConfig
from talkgraph.pipeline import BuildOptions, build_artifact

# Five talks, two of which carry the titles the search/query tests need.
# Transcripts are synthetic but share vocabulary within topics so that
# similarities, clouds, and sentiment all come out non-degenerate.
FIXTURE_TALKS = [
    (
        "Do schools kill creativity?",
        "Ken Robinson",
        "['children', 'creativity', 'education']",
        47227110,
        "https://www.ted.com/talks/ken_robinson_says_schools_kill_creativity",
        "I love creativity and children love to learn. Schools teach children "
        "but schools can kill creativity. (Laughter) Education should help "
        "wonderful creative children learn. Creativity matters in education "
        "and children love wonderful ideas. Learning is beautiful.",
    ),
    (
        "3 ways the brain creates meaning",
        "Tom Wujec",
        "['brain', 'cognitive science', 'visualization']",
        1520100,
        "https://www.ted.com/talks/tom_wujec_on_3_ways_the_brain_creates_meaning",
        "The brain creates meaning from images. Your brain maps visual "
        "information and the brain builds models of meaning. (Applause) "
        "Images help the brain understand meaning. Visual models make "
        "meaning clear and the brain loves clear images.",
    ),
    (
        "The power of vulnerability",
        "Brené Brown",
        "['communication', 'fear', 'vulnerability']",
        31168152,
        "https://www.ted.com/talks/brene_brown_on_vulnerability",
        "Vulnerability is the core of shame and fear. People fear shame but "
        "vulnerability is also the birthplace of love and joy. We numb "
        "vulnerability and we numb fear. Courage means accepting fear and "
        "shame with an open heart full of love.",
    ),
    (
        "How great leaders inspire action",
        "Simon Sinek",
        "['business', 'leadership', 'success']",
        28717502,
        "https://www.ted.com/talks/simon_sinek_how_great_leaders_inspire_action",
        "Great leaders inspire action because leaders start with why. People "
        "follow leaders who believe. Why do leaders inspire action? Because "
        "belief drives action and action builds great organizations. Leaders "
        "communicate why before what.",
    ),
    (
        "My stroke of insight",
        "Jill Bolte Taylor",
        "['brain', 'consciousness', 'science']",
        26261514,
        "https://www.ted.com/talks/jill_bolte_taylor_s_powerful_stroke_of_insight",
        "A stroke changed how my brain works. The brain has two hemispheres "
        "and my stroke silenced one hemisphere. I studied the brain and the "
        "stroke taught me insight about the brain. Terrible fear became "
        "beautiful insight about consciousness.",
    ),
]

LEXICON_ROWS = [
    ("love", 1, 8.42),
    ("loves", 2, 8.0),
    ("beautiful", 3, 7.92),
    ("joy", 4, 8.21),
    ("wonderful", 5, 8.0),
    ("great", 6, 7.5),
    ("courage", 7, 7.1),
    ("insight", 8, 7.0),
    ("clear", 9, 6.6),
    ("help", 10, 6.9),
    ("information", 11, 5.1),  # neutral: filtered by the default band
    ("people", 12, 5.5),  # neutral: filtered by the default band
    ("fear", 13, 2.25),
    ("shame", 14, 2.1),
    ("terrible", 15, 1.9),
    ("kill", 16, 1.56),
    ("stroke", 17, 2.6),
    ("numb", 18, 3.0),
]


def _csv_bytes(header, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue().encode("utf-8")


def fixture_main_csv():
    rows = [
        (i, title, speaker, tags, views, url)
        for i, (title, speaker, tags, views, url, _) in enumerate(FIXTURE_TALKS)
    ]
    return _csv_bytes(
        ("comments", "title", "main_speaker", "tags", "views", "url"), rows
    )


def fixture_transcript_csv():
    rows = [(transcript, url) for (_, _, _, _, url, transcript) in FIXTURE_TALKS]
    return _csv_bytes(("transcript", "url"), rows)


def fixture_lexicon_bytes():
    lines = ["word\thappiness_rank\thappiness_average"]
    lines.extend(f"{w}\t{rank}\t{h}" for w, rank, h in LEXICON_ROWS)
    return ("\n".join(lines) + "\n").encode("utf-8")


def fixture_build_options(**overrides):
    train = overrides.pop(
        "train",
        TrainConfig(
            dim=8,
            window=2,
            epochs=4,
            negatives=2,
            min_count=1,
            subsample_threshold=0.0,
            seed=11,
        ),
    )
    defaults = dict(
        train=train, band=(4.0, 6.0), cloud_size=30, edge_fraction=0.2, resolution=1.0
    )
    defaults.update(overrides)
    return BuildOptions(**defaults)


@pytest.fixture(scope="session")
def fixture_corpus():
    corpus, _ = build_corpus(fixture_main_csv(), fixture_transcript_csv())
    return corpus


@pytest.fixture(scope="session")
def fixture_artifact(fixture_corpus):
    built, _ = build_artifact(fixture_corpus, fixture_lexicon_bytes(), fixture_build_options())
    return built


@pytest.fixture(scope="session")
def fixture_artifact_path(fixture_artifact, tmp_path_factory):
    path = tmp_path_factory.mktemp("artifact") / "fixture.talkgraph"
    save_artifact(fixture_artifact, path)
    return path
