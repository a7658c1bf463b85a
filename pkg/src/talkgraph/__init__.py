"""Transcript-based lecture recommender.

Pipeline: ingest talk metadata and transcripts, score sentiment against a
happiness lexicon, extract TF-IDF word clouds, train document embeddings,
build a top-fraction cosine-similarity network with detected communities,
and serve everything read-only over HTTP for an interactive explorer.
"""

__version__ = "0.1.0"
