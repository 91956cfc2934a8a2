"""Independent brute-force oracles for the test suite.

Everything here works on raw Python data (strings, lists) with none of the
package's index structures, so each oracle stays independent of the code
path it checks.
"""

from __future__ import annotations

import math
import random
import re

_WS = re.compile(r"[ \t\n\r\f\v]+")
_WS_CHARS = " \t\n\r\f\v"


def split_tokens(query: str) -> list[str]:
    return [t for t in _WS.split(query) if t]


def parse_query(query: str) -> tuple[list[str], str]:
    tokens = split_tokens(query)
    if not tokens or query[-1] in _WS_CHARS:
        return tokens, ""
    return tokens[:-1], tokens[-1]


# -- succinct oracles ----------------------------------------------------------


def naive_ef_layout(values: list[int], universe: int) -> tuple[int, list[int], list[int]]:
    """Bit-by-bit Elias-Fano encoder: (low_width, low_words, high_words)."""
    n = len(values)
    if n == 0:
        return 0, [], []
    ratio = universe / n
    low_width = max(0, math.floor(math.log2(ratio))) if ratio >= 1 else 0
    # exact integer correction for float edge cases
    while (1 << (low_width + 1)) * n <= universe:
        low_width += 1
    while low_width > 0 and (1 << low_width) * n > universe:
        low_width -= 1
    low_bits: list[int] = []
    for v in values:
        for b in range(low_width):
            low_bits.append(v >> b & 1)
    high_len = n + ((universe - 1) >> low_width) + 1
    high_bits = [0] * high_len
    for i, v in enumerate(values):
        high_bits[(v >> low_width) + i] = 1
    return low_width, pack_bits(low_bits), pack_bits(high_bits)


def pack_bits(bits: list[int]) -> list[int]:
    words = [0] * ((len(bits) + 63) // 64)
    for i, b in enumerate(bits):
        if b:
            words[i >> 6] |= 1 << (i & 63)
    return words


def linear_next_geq(values: list[int], x: int, start: int, infinity: int) -> tuple[int, int]:
    """(value, index) of the first element >= x at or after start."""
    for i in range(start, len(values)):
        if values[i] >= x:
            return values[i], i
    return infinity, len(values)


def naive_rank1(bits: list[int], i: int) -> int:
    return sum(bits[:i])


def naive_rmq(values, p: int, q: int) -> int:
    """0-based leftmost position of the minimum on [p, q]."""
    best_pos = p
    for i in range(p + 1, q + 1):
        if values[i] < values[best_pos]:
            best_pos = i
    return best_pos


def naive_topk_smallest(values, p: int, q: int, k: int) -> list[tuple[int, int]]:
    """(1-based position, value) pairs by (value, position), first k."""
    ranked = sorted((v, i) for i, v in enumerate(values[p - 1 : q], start=p))
    return [(i, v) for v, i in ranked[:k]]


# -- corpus / search oracles ---------------------------------------------------


class CorpusOracle:
    """Brute-force single source of truth for one corpus.

    rows are (text, score, docid) with docids assigned by
    (score desc, utf-8 text asc), mirroring the documented contract.
    """

    def __init__(self, scored_texts: dict[str, int]):
        ordered = sorted(scored_texts.items(), key=lambda kv: (-kv[1], kv[0].encode()))
        self.rows = [(text, score, docid) for docid, (text, score) in
                     enumerate(ordered, start=1)]
        self.vocab = sorted({t for text in scored_texts for t in text.split(" ")},
                            key=str.encode)
        self.vocab_set = set(self.vocab)

    def lexicographic_rows(self) -> list[tuple[tuple[int, ...], int]]:
        """(term-id tuple, docid) sorted by numeric id-sequence order."""
        ids = {t: i for i, t in enumerate(self.vocab, start=1)}
        seqs = [(tuple(ids[t] for t in text.split(" ")), docid)
                for text, _, docid in self.rows]
        return sorted(seqs)

    def term_prefix_range(self, prefix: str) -> tuple[int, int] | None:
        matches = [i for i, t in enumerate(self.vocab, start=1)
                   if t.startswith(prefix)]
        if not matches:
            return None
        return matches[0], matches[-1]

    def locate_prefix(self, prefix_ids: tuple[int, ...],
                      term_range: tuple[int, int]) -> tuple[int, int] | None:
        """Linear-scan completion range for the prefix + next-term condition."""
        lo, hi = term_range
        rows = self.lexicographic_rows()
        m = len(prefix_ids)
        matches = [i for i, (seq, _) in enumerate(rows, start=1)
                   if len(seq) > m and seq[:m] == tuple(prefix_ids) and lo <= seq[m] <= hi]
        if not matches:
            return None
        return matches[0], matches[-1]

    def prefix_search(self, query: str, k: int) -> list[int]:
        prefix_tokens, suffix = parse_query(query)
        if not prefix_tokens and not suffix:
            return []
        ps = " ".join(prefix_tokens)
        if suffix:
            ps = f"{ps} {suffix}" if ps else suffix
        elif ps:
            ps += " "
        matches = [(text, score, docid) for text, score, docid in self.rows
                   if text.startswith(ps)]
        matches.sort(key=lambda r: (-r[1], r[0].encode()))
        return [docid for _, _, docid in matches[:k]]

    def conjunctive_search(self, query: str, k: int) -> list[int]:
        prefix_tokens, suffix = parse_query(query)
        if not prefix_tokens and not suffix:
            return []
        needed = [t for t in prefix_tokens if t in self.vocab_set]
        if suffix:
            suffix_terms = {t for t in self.vocab_set if t.startswith(suffix)}
            if not suffix_terms:
                return []
        else:
            suffix_terms = None  # any term qualifies
        out = []
        for text, _, docid in sorted(self.rows, key=lambda r: r[2]):
            terms = text.split(" ")
            if all(t in terms for t in needed) and (
                    suffix_terms is None or any(t in suffix_terms for t in terms)):
                out.append(docid)
                if len(out) == k:
                    break
        return out

    def inverted_lists(self) -> dict[str, list[int]]:
        lists: dict[str, list[int]] = {t: [] for t in self.vocab}
        for text, _, docid in sorted(self.rows, key=lambda r: r[2]):
            for t in set(text.split(" ")):
                lists[t].append(docid)
        return lists


_STEMS = ["a", "al", "b", "ba", "be", "c", "ca", "q", "qu", "s", "se", "sp",
          "spo", "x", "z", "i", "t", "tr"]
_TAILS = "abcdefgh0123456789"


def random_vocabulary(rng: random.Random, size: int) -> list[str]:
    vocab: set[str] = set()
    while len(vocab) < size:
        stem = rng.choice(_STEMS)
        tail = "".join(rng.choice(_TAILS) for _ in range(rng.randint(0, 5)))
        vocab.add(stem + tail)
    return sorted(vocab, key=str.encode)


def random_scored_texts(rng: random.Random, max_n: int = 300,
                        max_vocab: int = 60) -> dict[str, int]:
    vocab = random_vocabulary(rng, rng.randint(1, max_vocab))
    n = rng.randint(1, max_n)
    texts: dict[str, int] = {}
    for _ in range(n):
        length = rng.randint(1, 6)
        terms = [rng.choice(vocab) for _ in range(length)]
        texts[" ".join(terms)] = rng.randint(0, 50)
    return texts


def random_queries(rng: random.Random, oracle: CorpusOracle, count: int) -> list[str]:
    """Retention-truncated corpus queries plus adversarial extras."""
    queries: list[str] = []
    texts = [r[0] for r in oracle.rows]
    retentions = [0, 25, 50, 75, 100]
    while len(queries) < count:
        roll = rng.random()
        if roll < 0.70:
            text = rng.choice(texts)
            retention = rng.choice(retentions)
            tokens = text.split(" ")
            last = tokens[-1]
            keep = max(1, math.ceil(retention / 100 * len(last)))
            tokens[-1] = last[:keep]
            q = " ".join(tokens)
            if rng.random() < 0.15:
                q += " "
            queries.append(q)
        elif roll < 0.85:
            # vocabulary terms with an out-of-vocabulary token mixed in
            parts = [rng.choice(oracle.vocab) for _ in range(rng.randint(1, 3))]
            parts.insert(rng.randrange(len(parts) + 1), "zzzoov" + str(rng.randint(0, 9)))
            queries.append(" ".join(parts))
        else:
            queries.append("".join(rng.choice("absqz ") for _ in range(rng.randint(0, 8))))
    return queries
