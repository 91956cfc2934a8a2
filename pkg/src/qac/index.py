"""In-memory bundle of every index structure, with build, save and load."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import container
from .completions import CompletionTrie, DocidMap, FcCompletionSet, ForwardIndex
from .corpus import ScoredCompletion, ScoredCorpus, to_int_completions
from .dictionary import DEFAULT_BUCKET_SIZE, FcDictionary
from .inverted import InvertedIndex
from .rmq import SuccinctRmq
from .serial import ByteReader, ByteWriter


@dataclass
class IndexMeta:
    completion_count: int
    term_count: int
    avg_terms_per_completion: float
    scores: list[int]  # docid-indexed, entry 0 unused

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.varint(self.completion_count)
        w.varint(self.term_count)
        w.f64(self.avg_terms_per_completion)
        for docid in range(1, self.completion_count + 1):
            w.varint(self.scores[docid])
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "IndexMeta":
        r = ByteReader(data)
        n = r.varint()
        terms = r.varint()
        avg = r.f64()
        scores = [0] + [r.varint() for _ in range(n)]
        return cls(n, terms, avg, scores)


class Index:
    """Immutable after build/load; safe for unsynchronized concurrent reads."""

    __slots__ = ("dictionary", "trie", "fc_set", "forward", "docid_map",
                 "rmq_docids", "inverted", "rmq_minimal", "meta")

    def __init__(self, dictionary: FcDictionary, trie: CompletionTrie,
                 fc_set: FcCompletionSet, forward: ForwardIndex,
                 docid_map: DocidMap, rmq_docids: SuccinctRmq | None,
                 inverted: InvertedIndex | None, rmq_minimal: SuccinctRmq | None,
                 meta: IndexMeta):
        self.dictionary = dictionary
        self.trie = trie
        self.fc_set = fc_set
        self.forward = forward
        self.docid_map = docid_map
        self.rmq_docids = rmq_docids
        self.inverted = inverted
        self.rmq_minimal = rmq_minimal
        self.meta = meta

    @classmethod
    def build(cls, corpus: ScoredCorpus,
              dict_bucket_size: int = DEFAULT_BUCKET_SIZE,
              fc_bucket_size: int = FcCompletionSet.DEFAULT_BUCKET_SIZE) -> "Index":
        dictionary = FcDictionary.build(corpus.term_vocabulary, dict_bucket_size)
        ints = to_int_completions(corpus, dictionary)
        trie = CompletionTrie.build(ints)
        fc_set = FcCompletionSet.build(ints, fc_bucket_size)
        forward = ForwardIndex.build(ints)
        docid_map = DocidMap.build(ints)
        n = len(corpus)
        rmq_docids = SuccinctRmq.build(docid_map.as_list()) if n else None
        inverted = InvertedIndex.build(ints, dictionary.term_count, n) if dictionary.term_count else None
        rmq_minimal = SuccinctRmq.build(inverted.minimal[1:]) if inverted else None
        scores = [0] * (n + 1)
        total_terms = 0
        for comp in corpus.completions:
            scores[comp.docid] = comp.score
            total_terms += len(comp.text.split(" "))
        meta = IndexMeta(n, dictionary.term_count,
                         total_terms / n if n else 0.0, scores)
        return cls(dictionary, trie, fc_set, forward, docid_map,
                   rmq_docids, inverted, rmq_minimal, meta)

    @property
    def completion_count(self) -> int:
        return self.meta.completion_count

    @property
    def term_count(self) -> int:
        return self.meta.term_count

    def score_of(self, docid: int) -> int:
        if not 1 <= docid <= self.meta.completion_count:
            raise ValueError(f"docid {docid} out of range")
        return self.meta.scores[docid]

    def completion_text(self, docid: int) -> str:
        ids = self.forward.access(docid)
        return " ".join(self.dictionary.extract(t) for t in ids)

    def to_corpus(self) -> ScoredCorpus:
        """Reconstruct the exact source corpus from FWD + DICT + META."""
        completions = [ScoredCompletion(self.completion_text(d), self.meta.scores[d], d)
                       for d in range(1, self.meta.completion_count + 1)]
        return ScoredCorpus(completions, list(self.dictionary))

    # -- persistence -----------------------------------------------------------

    def sections(self) -> dict[str, bytes]:
        return {
            "DICT": self.dictionary.to_bytes(),
            "TRIE": self.trie.to_bytes(),
            "FCSET": self.fc_set.to_bytes(),
            "FWD": self.forward.to_bytes(),
            "DMAP": self.docid_map.to_bytes(),
            "RMQD": self.rmq_docids.to_bytes() if self.rmq_docids else b"",
            "IIDX": self.inverted.to_bytes() if self.inverted else b"",
            "MINL": self.inverted.minimal_to_bytes() if self.inverted else b"",
            "RMQM": self.rmq_minimal.to_bytes() if self.rmq_minimal else b"",
            "META": self.meta.to_bytes(),
        }

    def section_sizes(self) -> dict[str, int]:
        return {name: len(data) for name, data in self.sections().items()}

    def save(self, path: str | Path) -> None:
        container.write_container(path, self.sections())

    @classmethod
    def load(cls, path: str | Path) -> "Index":
        sections = container.read_container(path)
        dictionary = FcDictionary.from_bytes(sections["DICT"])
        trie = CompletionTrie.from_bytes(sections["TRIE"])
        fc_set = FcCompletionSet.from_bytes(sections["FCSET"])
        forward = ForwardIndex.from_bytes(sections["FWD"])
        docid_map = DocidMap.from_bytes(sections["DMAP"])
        rmq_docids = SuccinctRmq.from_bytes(sections["RMQD"]) if sections["RMQD"] else None
        inverted = InvertedIndex.from_bytes(sections["IIDX"]) if sections["IIDX"] else None
        rmq_minimal = SuccinctRmq.from_bytes(sections["RMQM"]) if sections["RMQM"] else None
        meta = IndexMeta.from_bytes(sections["META"])
        if inverted is not None:
            stored = InvertedIndex.minimal_from_bytes(sections["MINL"])
            if stored != inverted.minimal:
                raise container.ContainerError(
                    "MINL section disagrees with the first docids of the inverted lists")
        return cls(dictionary, trie, fc_set, forward, docid_map,
                   rmq_docids, inverted, rmq_minimal, meta)


def build_from_log(path: str | Path, scoring: str = "frequency",
                   dict_bucket_size: int = DEFAULT_BUCKET_SIZE,
                   fc_bucket_size: int = FcCompletionSet.DEFAULT_BUCKET_SIZE) -> Index:
    from .corpus import ingest_path

    corpus = ingest_path(str(path), scoring)
    return Index.build(corpus, dict_bucket_size, fc_bucket_size)
