"""Evaluation harness: query sampling, retention truncation, timing,
effectiveness and space breakdowns.

Queries are synthesized from indexed completions: every token but the last
is kept whole and the last is truncated to a retention percentage of its
characters (ceil, minimum one character). Completions are bucketed by term
count (1..6 and 7+) and sampled per bucket with a fixed seed, so runs are
reproducible. Effectiveness compares the score multisets returned by
conjunctive-search and prefix-search for the same query.
"""

from __future__ import annotations

import json
import math
import random
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .corpus import ScoredCorpus
from .engine import Engine
from .index import Index

TERM_BUCKETS = ("1", "2", "3", "4", "5", "6", "7+")

#: Effectiveness is undefined when prefix-search returns nothing but
#: conjunctive-search does; cells carry this sentinel instead of a number.
NOT_APPLICABLE = None


def make_query(completion: str, retention: int) -> str:
    """Truncate the last token to ``retention`` percent of its characters.

    ceil rounding, and never fewer than one character, so retention 0 keeps
    a single character. 100 keeps the full completion.
    """
    if not completion:
        raise ValueError("completion must be non-empty")
    tokens = completion.split(" ")
    last = tokens[-1]
    keep = max(1, math.ceil(retention / 100 * len(last)))
    tokens[-1] = last[:keep]
    return " ".join(tokens)


def effectiveness(prefix_scores: Sequence[int], conjunctive_scores: Sequence[int]):
    """Percentage of conjunctive results whose scores exceed the prefix-search
    multiset: |S_c \\ S_p| / |S_p| * 100.

    Both empty -> 0.0; S_p empty with S_c non-empty -> NOT_APPLICABLE.
    """
    s_p = Counter(prefix_scores)
    s_c = Counter(conjunctive_scores)
    extra = s_c - s_p
    n_extra = sum(extra.values())
    n_p = sum(s_p.values())
    if n_p == 0:
        return 0.0 if n_extra == 0 else NOT_APPLICABLE
    return n_extra / n_p * 100.0


@dataclass
class BenchSpec:
    retentions: tuple[int, ...] = (0, 25, 50, 75)
    samples_per_bucket: int = 50
    k: int = 10
    variants: tuple[str, ...] = ("fwd",)
    seed: int = 0
    repetitions: int = 5
    exclude_sampled: bool = False

    VALID_RETENTIONS = (0, 25, 50, 75, 100)
    VALID_VARIANTS = ("heap", "fwd", "fc")

    def validate(self) -> None:
        for r in self.retentions:
            if r not in self.VALID_RETENTIONS:
                raise ValueError(f"retention {r} not in {self.VALID_RETENTIONS}")
        for v in self.variants:
            if v not in self.VALID_VARIANTS:
                raise ValueError(f"unknown variant {v!r}")
        if self.k < 1 or self.samples_per_bucket < 1 or self.repetitions < 1:
            raise ValueError("k, samples_per_bucket and repetitions must be >= 1")

    @classmethod
    def from_file(cls, path: str) -> "BenchSpec":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        spec = cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in raw.items()})
        spec.validate()
        return spec


@dataclass
class BenchReport:
    records: list[dict] = field(default_factory=list)
    space: dict[str, dict] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def to_records(self) -> list[dict]:
        return list(self.records)

    def write_records(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self.records:
                fh.write(json.dumps(rec) + "\n")

    def render(self) -> str:
        lines = []
        n = self.stats.get("completions", 0)
        lines.append(f"completions: {n}   unique terms: {self.stats.get('terms', 0)}   "
                     f"avg terms/completion: {self.stats.get('avg_terms', 0.0):.2f}")
        lines.append("")
        lines.append("space (MiB / bytes per completion):")
        for name, cell in self.space.items():
            lines.append(f"  {name:<6} {cell['mib']:>9.3f} MiB   {cell['bpc']:>8.2f} bpc")
        if self.records:
            lines.append("")
            header = f"{'variant':<8}{'bucket':<8}{'%':<5}{'mean us':>10}{'effect %':>10}{'queries':>9}"
            lines.append(header)
            lines.append("-" * len(header))
            for rec in self.records:
                eff = rec["effectiveness_pct"]
                eff_s = f"{eff:.1f}" if eff is not None else "n/a"
                lines.append(f"{rec['variant']:<8}{rec['bucket']:<8}{rec['retention']:<5}"
                             f"{rec['mean_us']:>10.1f}{eff_s:>10}{rec['queries']:>9}")
        return "\n".join(lines)


def bucket_of(term_count: int) -> str:
    return str(term_count) if term_count <= 6 else "7+"


def sample_queries(corpus: ScoredCorpus, spec: BenchSpec) -> dict[str, list[str]]:
    """Seeded per-bucket sample of completion strings, bucketed by term count."""
    rng = random.Random(spec.seed)
    groups: dict[str, list[str]] = {b: [] for b in TERM_BUCKETS}
    for comp in corpus.completions:
        groups[bucket_of(comp.text.count(" ") + 1)].append(comp.text)
    out: dict[str, list[str]] = {}
    for bucket, texts in groups.items():
        if not texts:
            continue
        if len(texts) <= spec.samples_per_bucket:
            out[bucket] = list(texts)
        else:
            out[bucket] = rng.sample(texts, spec.samples_per_bucket)
    return out


def _space_report(index: Index) -> dict[str, dict]:
    n = index.completion_count
    out = {}
    total = 0
    for name, size in index.section_sizes().items():
        total += size
        out[name] = {"bytes": size, "mib": size / (1 << 20),
                     "bpc": size / n if n else 0.0}
    out["TOTAL"] = {"bytes": total, "mib": total / (1 << 20),
                    "bpc": total / n if n else 0.0}
    return out


def run_bench(index: Index, spec: BenchSpec) -> BenchReport:
    """Timing, effectiveness and space for every (bucket, retention, variant).

    Latency is the mean over ``spec.repetitions`` timed passes after one
    warm-up pass, measured on a monotonic clock, one query at a time. With
    ``exclude_sampled`` the sampled queries are removed from the corpus and
    the index is rebuilt before measuring.
    """
    spec.validate()
    corpus = index.to_corpus()
    samples = sample_queries(corpus, spec)
    if spec.exclude_sampled:
        sampled = {t for texts in samples.values() for t in texts}
        kept = {c.text: c.score for c in corpus.completions if c.text not in sampled}
        index = Index.build(ScoredCorpus.from_scored_texts(kept))
    engine = Engine(index)
    report = BenchReport()
    report.space = _space_report(index)
    report.stats = {"completions": index.completion_count,
                    "terms": index.term_count,
                    "avg_terms": index.meta.avg_terms_per_completion}
    if index.completion_count == 0:
        return report
    for variant in spec.variants:
        for bucket, texts in samples.items():
            for retention in spec.retentions:
                queries = [make_query(t, retention) for t in texts]
                prefix_sets = [engine.search(q, spec.k, "prefix") for q in queries]
                conj_sets = [engine.search(q, spec.k, "conjunctive", variant) for q in queries]
                effs = []
                na = 0
                for pr, cr in zip(prefix_sets, conj_sets):
                    e = effectiveness([s.score for s in pr.results],
                                      [s.score for s in cr.results])
                    if e is NOT_APPLICABLE:
                        na += 1
                    else:
                        effs.append(e)
                # warm-up already done above; timed passes
                per_pass = []
                for _ in range(spec.repetitions):
                    start = time.perf_counter_ns()
                    for q in queries:
                        engine.search(q, spec.k, "conjunctive", variant)
                    per_pass.append((time.perf_counter_ns() - start) / 1000 / len(queries))
                report.records.append({
                    "variant": variant,
                    "bucket": bucket,
                    "retention": retention,
                    "queries": len(queries),
                    "mean_us": statistics.mean(per_pass),
                    "median_us": statistics.median(per_pass),
                    "effectiveness_pct": statistics.mean(effs) if effs else None,
                    "effectiveness_na": na,
                    "first_query": queries[0] if queries else "",
                    "prefix_docids_sample": prefix_sets[0].docids() if prefix_sets else [],
                })
    return report
