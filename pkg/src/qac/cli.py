"""Command-line interface: build, query, bench and serve subcommands."""

from __future__ import annotations

import argparse
import os
import sys

from .bench import BenchSpec, run_bench
from .corpus import IngestError, ingest_path
from .engine import MODES, VARIANTS, Engine
from .index import Index

DICT_BUCKET_CHOICES = (4, 8, 16, 32, 64, 128, 256)


def _cmd_build(args: argparse.Namespace) -> int:
    try:
        corpus = ingest_path(args.input, "explicit" if args.scores else "frequency")
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    index = Index.build(corpus, dict_bucket_size=args.bucket_size,
                        fc_bucket_size=args.fc_bucket_size)
    try:
        index.save(args.output)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    meta = index.meta
    print(f"completions: {meta.completion_count}")
    print(f"unique terms: {meta.term_count}")
    print(f"avg terms per completion: {meta.avg_terms_per_completion:.2f}")
    total = sum(index.section_sizes().values())
    bpc = total / meta.completion_count if meta.completion_count else 0.0
    print(f"index size: {total} bytes ({bpc:.2f} bytes per completion)")
    return 0


def _load_index(path: str) -> Index:
    try:
        return Index.load(path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot load index {path}: {exc}", file=sys.stderr)
        raise SystemExit(1) from exc


def _cmd_query(args: argparse.Namespace) -> int:
    index = _load_index(args.index)
    engine = Engine(index)
    response = engine.search(args.query, k=args.k, mode=args.mode, variant=args.variant)
    for s in response.results:
        print(f"{s.rank}\t{s.docid}\t{s.score}\t{s.completion}")
    if args.timings:
        t = response.timings_us
        print(f"# parse={t['parse']}us locate={t['locate']}us "
              f"search={t['search']}us report={t['report']}us total={t['total']}us",
              file=sys.stderr)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    index = _load_index(args.index)
    if args.spec:
        spec = BenchSpec.from_file(args.spec)
    else:
        spec = BenchSpec()
    if args.seed is not None:
        spec.seed = args.seed
    if args.k is not None:
        spec.k = args.k
    if args.variants:
        spec.variants = tuple(args.variants.split(","))
    try:
        spec.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = run_bench(index, spec)
    print(report.render())
    if args.out:
        report.write_records(args.out)
        print(f"records written to {args.out}", file=sys.stderr)
    return 0


def _resolve_bind(host: str, port: int) -> tuple[str, int]:
    """QAC_BIND=host:port (or :port) overrides the command-line address."""
    bind = os.environ.get("QAC_BIND")
    if bind:
        env_host, _, port_s = bind.rpartition(":")
        host = env_host or host
        port = int(port_s)
    return host, port


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    index = _load_index(args.index)
    host, port = _resolve_bind(args.host, args.port)
    serve(index, host=host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qac", description="query auto-completion engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an index from a query log")
    p.add_argument("input", help="query log, one query per line (UTF-8)")
    p.add_argument("output", help="index container path")
    p.add_argument("--scores", action="store_true",
                   help="input lines are 'query<TAB>score' instead of raw queries")
    p.add_argument("--bucket-size", type=int, default=16, choices=DICT_BUCKET_CHOICES,
                   help="dictionary front-coding bucket size")
    p.add_argument("--fc-bucket-size", type=int, default=16,
                   help="completion-set front-coding bucket size")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("query", help="run one query against an index")
    p.add_argument("index")
    p.add_argument("query")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--mode", choices=MODES, default="conjunctive")
    p.add_argument("--variant", choices=VARIANTS, default="fwd")
    p.add_argument("--timings", action="store_true", help="print the timing breakdown")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("bench", help="run the evaluation harness")
    p.add_argument("index")
    p.add_argument("--spec", help="JSON file with BenchSpec fields")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--variants", help="comma-separated subset of heap,fwd,fc")
    p.add_argument("--out", help="write one JSON record per cell to this path")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="serve completions over HTTP")
    p.add_argument("index")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
