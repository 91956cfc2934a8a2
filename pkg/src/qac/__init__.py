"""Query auto-completion engine.

Builds a compact index over a scored query log (front-coded dictionary,
Elias-Fano completion trie, succinct range-minimum structures, compressed
inverted index) and answers prefix-search and conjunctive-search queries
through a library API, a CLI and an HTTP service.
"""

from .corpus import IngestError, ScoredCorpus, ingest, ingest_path, tokenize
from .dictionary import INVALID_TERM_ID, FcDictionary
from .engine import Engine, ParsedQuery, SearchResponse, Suggestion, parse
from .index import Index, build_from_log
from .succinct import INFINITY

__all__ = [
    "Engine",
    "FcDictionary",
    "INFINITY",
    "INVALID_TERM_ID",
    "Index",
    "IngestError",
    "ParsedQuery",
    "ScoredCorpus",
    "SearchResponse",
    "Suggestion",
    "build_from_log",
    "ingest",
    "ingest_path",
    "parse",
    "tokenize",
]

__version__ = "0.1.0"
