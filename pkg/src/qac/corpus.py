"""Query-log ingestion: scoring, docid assignment and integer completions.

A completion's canonical text is its tokens joined by single spaces
(leading/trailing/repeated whitespace carries no meaning). Docids are the
permutation 1..N of completions ordered by score descending, ties broken by
ascending canonical text, so a smaller docid always means a better score.
No case folding, stemming or other text transformation is applied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from .dictionary import FcDictionary

_ASCII_WS = re.compile(r"[ \t\n\r\f\v]+")


class IngestError(ValueError):
    """Malformed ingest input; message names the offending line."""


def tokenize(query: str) -> list[str]:
    """Split on runs of ASCII whitespace, preserving everything else."""
    return [t for t in _ASCII_WS.split(query) if t]


@dataclass(frozen=True)
class ScoredCompletion:
    text: str
    score: int
    docid: int


class ScoredCorpus:
    """Deduplicated completions with scores, indexed by docid (1..N)."""

    __slots__ = ("completions", "term_vocabulary")

    def __init__(self, completions: list[ScoredCompletion], term_vocabulary: list[str]):
        self.completions = completions
        self.term_vocabulary = term_vocabulary

    def __len__(self) -> int:
        return len(self.completions)

    def by_docid(self, docid: int) -> ScoredCompletion:
        if not 1 <= docid <= len(self.completions):
            raise ValueError(f"docid {docid} out of [1, {len(self.completions)}]")
        return self.completions[docid - 1]

    @classmethod
    def from_scored_texts(cls, scored: dict[str, int]) -> "ScoredCorpus":
        ordered = sorted(scored.items(), key=lambda kv: (-kv[1], kv[0].encode("utf-8")))
        completions = [ScoredCompletion(text, score, docid)
                       for docid, (text, score) in enumerate(ordered, start=1)]
        vocab = sorted({t for text in scored for t in text.split(" ")},
                       key=lambda t: t.encode("utf-8"))
        return cls(completions, vocab)


def ingest(lines: Iterable[str], scoring: str = "frequency") -> ScoredCorpus:
    """Build a corpus from a query log.

    ``frequency`` mode counts repetitions of each canonical query;
    ``explicit`` mode expects ``query<TAB>score`` per line (last occurrence
    wins). Lines with no tokens are skipped; an empty log is a valid empty
    corpus.
    """
    if scoring not in ("frequency", "explicit"):
        raise ValueError(f"unknown scoring mode {scoring!r}")
    scores: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if scoring == "explicit":
            query_part, sep, score_part = line.rpartition("\t")
            if not sep:
                raise IngestError(f"line {lineno}: expected 'query<TAB>score'")
            try:
                score = int(score_part.strip())
            except ValueError:
                raise IngestError(f"line {lineno}: score {score_part.strip()!r} is not an integer") from None
            if score < 0:
                raise IngestError(f"line {lineno}: score must be non-negative")
            text = " ".join(tokenize(query_part))
            if not text:
                continue
            scores[text] = score
        else:
            text = " ".join(tokenize(line))
            if not text:
                continue
            scores[text] = scores.get(text, 0) + 1
    return ScoredCorpus.from_scored_texts(scores)


def ingest_path(path: str, scoring: str = "frequency") -> ScoredCorpus:
    with open(path, "r", encoding="utf-8") as fh:
        return ingest(fh, scoring)


class IntCompletion(NamedTuple):
    term_ids: tuple[int, ...]
    docid: int


def to_int_completions(corpus: ScoredCorpus, dictionary: "FcDictionary") -> list[IntCompletion]:
    """Completions as term-id tuples, sorted by numeric sequence order.

    The dictionary must cover the corpus vocabulary; a completion that is a
    prefix of another sorts before it.
    """
    out: list[IntCompletion] = []
    cache: dict[str, int] = {}
    for comp in corpus.completions:
        ids = []
        for term in comp.text.split(" "):
            tid = cache.get(term)
            if tid is None:
                tid = dictionary.locate(term)
                if tid == 0:
                    raise ValueError(f"term {term!r} missing from dictionary")
                cache[term] = tid
            ids.append(tid)
        out.append(IntCompletion(tuple(ids), comp.docid))
    out.sort(key=lambda c: c.term_ids)
    return out


def detokenize(term_ids: Sequence[int], dictionary: "FcDictionary") -> str:
    return " ".join(dictionary.extract(t) for t in term_ids)
