"""End-to-end query processing.

Parsing splits a query into whole prefix terms plus the last, possibly
incomplete, suffix token. Prefix-search resolves the suffix to a dictionary
id range, walks the completion structures to a lexicographic range and
extracts the k smallest docids with the range-minimum heap. Conjunctive
search intersects the prefix terms' inverted lists and keeps docids with
any term in the suffix range, either by probing a heap of list iterators or
by scanning each candidate completion forward. Single-term queries (empty
prefix) run on the minimal-docids array with lazily opened list iterators.

Out-of-vocabulary prefix terms make prefix-search return nothing; the
conjunctive mode drops them and searches with whatever remains. A query
ending in whitespace has an empty suffix, which widens the suffix condition
to the full term range.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .corpus import tokenize
from .dictionary import INVALID_TERM_ID, FcDictionary
from .index import Index
from .inverted import InvertedIndex
from .rmq import SuccinctRmq, topk_smallest
from .succinct import INFINITY

_ASCII_WS = " \t\n\r\f\v"

MODES = ("prefix", "conjunctive")
VARIANTS = ("heap", "fwd", "fc")
DEFAULT_K = 10


@dataclass(frozen=True)
class ParsedQuery:
    raw: str
    prefix_tokens: tuple[str, ...]
    prefix_ids: tuple[int, ...]  # INVALID_TERM_ID marks out-of-vocabulary tokens
    suffix: str

    @property
    def valid_prefix_ids(self) -> tuple[int, ...]:
        return tuple(t for t in self.prefix_ids if t != INVALID_TERM_ID)


@dataclass(frozen=True)
class Suggestion:
    rank: int
    docid: int
    score: int
    completion: str


@dataclass
class SearchResponse:
    query: str
    parsed: ParsedQuery
    results: list[Suggestion]
    timings_us: dict[str, int] = field(default_factory=dict)

    def docids(self) -> list[int]:
        return [s.docid for s in self.results]


def parse(query: str, dictionary: FcDictionary) -> ParsedQuery:
    """Split into prefix term ids and the trailing suffix token.

    A query ending in whitespace (or an empty query) has an empty suffix;
    every token before the suffix is looked up in the dictionary.
    """
    tokens = tokenize(query)
    if not tokens or query[-1] in _ASCII_WS:
        prefix_tokens = tuple(tokens)
        suffix = ""
    else:
        prefix_tokens = tuple(tokens[:-1])
        suffix = tokens[-1]
    ids = tuple(dictionary.locate(t) for t in prefix_tokens)
    return ParsedQuery(query, prefix_tokens, ids, suffix)


def conjunctive_heap(inverted: InvertedIndex, prefix_ids: Sequence[int],
                     lo: int, hi: int, k: int,
                     trace: list | None = None) -> list[int]:
    """Heap-of-iterators conjunctive search.

    One iterator per term in [lo, hi] goes into a min-heap keyed by current
    docid; every intersection docid is probed against the heap top,
    advancing or discarding iterators until the top meets or passes it.
    ``trace`` collects ("match", docid) / ("advance", term, docid) /
    ("pop", term) events.
    """
    entries = []
    for t in range(lo, hi + 1):
        cur = inverted.iterator(t)
        entries.append((cur.docid, t, cur))
    heapq.heapify(entries)
    results: list[int] = []
    for x in inverted.intersection(prefix_ids):
        if not entries:
            break
        while entries:
            top_docid, top_term, top_cur = entries[0]
            if top_docid > x:
                break
            if top_docid < x:
                z = top_cur.next_geq(x)
                if z < INFINITY:
                    heapq.heapreplace(entries, (z, top_term, top_cur))
                    if trace is not None:
                        trace.append(("advance", top_term, z))
                else:
                    heapq.heappop(entries)
                    if trace is not None:
                        trace.append(("pop", top_term))
            else:
                results.append(x)
                if trace is not None:
                    trace.append(("match", x))
                if len(results) == k:
                    return results
                break
    return results


def conjunctive_forward(inverted: InvertedIndex,
                        extract: Callable[[int], tuple[int, ...]],
                        prefix_ids: Sequence[int],
                        lo: int, hi: int, k: int) -> list[int]:
    """Forward conjunctive search: extract each intersection candidate and
    scan its few terms for one inside [lo, hi]."""
    results: list[int] = []
    for x in inverted.intersection(prefix_ids):
        for t in extract(x):
            if lo <= t <= hi:
                results.append(x)
                break
        if len(results) == k:
            break
    return results


def single_term_topk(inverted: InvertedIndex, rmq_minimal: SuccinctRmq,
                     lo: int, hi: int, k: int,
                     counters: dict | None = None) -> list[int]:
    """k smallest docids in the union of the lists for terms [lo, hi].

    Range-minimum queries over the minimal-docids array feed a heap of
    (docid, range) candidates; a list iterator is opened only when that
    list must actually emit an element. Heap entries are
    (docid, kind, term, a, b, cursor) with kind 0 = range candidate and
    kind 1 = open iterator.
    """
    minimal = inverted.minimal
    m = rmq_minimal.rmq(lo, hi)
    heap: list = [(minimal[m], 0, m, lo, hi, None)]
    opened: list[int] = []
    results: list[int] = []
    while heap and len(results) < k:
        docid, kind, m, a, b, cur = heapq.heappop(heap)
        if kind == 0:
            cur = inverted.iterator(m)
            opened.append(m)
            nxt = cur.next()
            if nxt < INFINITY:
                heapq.heappush(heap, (nxt, 1, m, 0, 0, cur))
            if a < m:
                lm = rmq_minimal.rmq(a, m - 1)
                heapq.heappush(heap, (minimal[lm], 0, lm, a, m - 1, None))
            if m < b:
                rm = rmq_minimal.rmq(m + 1, b)
                heapq.heappush(heap, (minimal[rm], 0, rm, m + 1, b, None))
        else:
            nxt = cur.next()
            if nxt < INFINITY:
                heapq.heappush(heap, (nxt, 1, m, 0, 0, cur))
        if not results or results[-1] != docid:
            results.append(docid)
    if counters is not None:
        counters["iterators_opened"] = len(opened)
        counters["opened_terms"] = opened
    return results


def single_term_scan_all(inverted: InvertedIndex, lo: int, hi: int, k: int) -> list[int]:
    """Reference baseline: open an iterator for every list in [lo, hi] and
    merge with a heap. Used as the oracle and the performance foil for
    :func:`single_term_topk`."""
    entries = []
    for t in range(lo, hi + 1):
        cur = inverted.iterator(t)
        entries.append((cur.docid, t, cur))
    heapq.heapify(entries)
    results: list[int] = []
    while entries and len(results) < k:
        docid, t, cur = entries[0]
        nxt = cur.next()
        if nxt < INFINITY:
            heapq.heapreplace(entries, (nxt, t, cur))
        else:
            heapq.heappop(entries)
        if not results or results[-1] != docid:
            results.append(docid)
    return results


class Engine:
    """Query front end over a loaded :class:`~qac.index.Index`.

    Holds only immutable structures; every query uses caller-local heaps
    and cursors, so many searches may run concurrently on one index.
    """

    def __init__(self, index: Index, default_variant: str = "fwd"):
        if default_variant not in VARIANTS:
            raise ValueError(f"unknown variant {default_variant!r}")
        self.index = index
        self.default_variant = default_variant

    def search(self, query: str, k: int = DEFAULT_K, mode: str = "conjunctive",
               variant: str | None = None) -> SearchResponse:
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        variant = variant or self.default_variant
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if k < 1:
            raise ValueError("k must be >= 1")
        index = self.index
        t0 = time.perf_counter_ns()
        parsed = parse(query, index.dictionary)
        t1 = time.perf_counter_ns()

        empty_query = not parsed.prefix_tokens and not parsed.suffix
        docids: list[int] = []
        comp_range: tuple[int, int] | None = None
        term_range: tuple[int, int] | None = None
        if mode == "prefix":
            if not empty_query and all(t != INVALID_TERM_ID for t in parsed.prefix_ids):
                term_range = index.dictionary.locate_prefix(parsed.suffix)
                if term_range is not None:
                    comp_range = index.trie.locate_prefix(parsed.prefix_ids, term_range)
            t2 = time.perf_counter_ns()
            if comp_range is not None:
                pairs = topk_smallest(index.docid_map.docid_at, index.rmq_docids,
                                      comp_range[0], comp_range[1], k)
                docids = [value for _, value in pairs]
        else:
            if not empty_query:
                if parsed.suffix:
                    term_range = index.dictionary.locate_prefix(parsed.suffix)
                elif index.dictionary.term_count:
                    term_range = (1, index.dictionary.term_count)
            t2 = time.perf_counter_ns()
            if term_range is not None:
                docids = self._conjunctive(parsed.valid_prefix_ids,
                                           term_range, k, variant)
        t3 = time.perf_counter_ns()
        results = self.render(docids)
        t4 = time.perf_counter_ns()
        timings = {
            "parse": (t1 - t0) // 1000,
            "locate": (t2 - t1) // 1000,
            "search": (t3 - t2) // 1000,
            "report": (t4 - t3) // 1000,
            "total": (t4 - t0) // 1000,
        }
        return SearchResponse(query, parsed, results, timings)

    def _conjunctive(self, prefix_ids: tuple[int, ...],
                     term_range: tuple[int, int], k: int, variant: str) -> list[int]:
        index = self.index
        if index.inverted is None:
            return []
        lo, hi = term_range
        if not prefix_ids:
            return single_term_topk(index.inverted, index.rmq_minimal, lo, hi, k)
        if variant == "heap":
            return conjunctive_heap(index.inverted, prefix_ids, lo, hi, k)
        if variant == "fwd":
            return conjunctive_forward(index.inverted, index.forward.access,
                                       prefix_ids, lo, hi, k)
        return conjunctive_forward(index.inverted, self._fc_extract,
                                   prefix_ids, lo, hi, k)

    def _fc_extract(self, docid: int) -> tuple[int, ...]:
        return self.index.fc_set.access(self.index.docid_map.lex_of(docid))

    def render(self, docids: Sequence[int]) -> list[Suggestion]:
        """Turn docids into ranked suggestions with scores and strings."""
        dictionary = self.index.dictionary
        forward = self.index.forward
        scores = self.index.meta.scores
        out = []
        for rank, docid in enumerate(docids, start=1):
            text = " ".join(dictionary.extract(t) for t in forward.access(docid))
            out.append(Suggestion(rank, docid, scores[docid], text))
        return out
