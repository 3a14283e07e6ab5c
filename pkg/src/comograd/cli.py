"""Command-line front end: extract, index, query, eval, serve.

All commands exit 0 on success and nonzero on error; tabular output is
tab-separated. The heavy lifting lives in the pipeline module; this file
only parses arguments and formats results.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import evalkit, pipeline, store
from .descriptors import DescriptorKind
from .errors import ComogradError, EmptyDatabase, ParamsMismatch

KIND_CHOICES = tuple(kind.label for kind in DescriptorKind)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated integer list") from None
    if not ks or any(k < 1 for k in ks):
        raise argparse.ArgumentTypeError("k values must be positive")
    return ks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comograd",
        description="protein tertiary-structure retrieval via gradient descriptors of Cα distance matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="print descriptors for each chain of a coordinate file")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--chain", default=None, metavar="C")
    p.add_argument("--kind", required=True, choices=KIND_CHOICES)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("index", help="build a feature database from a directory of coordinate files")
    p.add_argument("--dir", required=True, metavar="DIR")
    p.add_argument("--db", required=True, metavar="PATH")
    p.add_argument("--kind", required=True, choices=KIND_CHOICES)
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="parallel extraction threads (default: sequential)")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("query", help="rank database entries against a query coordinate file")
    p.add_argument("--db", required=True, metavar="PATH")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("-k", type=_positive_int, default=50)
    p.add_argument("--chain", default=None, metavar="C")
    p.add_argument("--kind", default=None, choices=KIND_CHOICES,
                   help="assert the database kind; mismatch is an error")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("eval", help="leave-self-out retrieval curves against SCOP labels")
    p.add_argument("--db", required=True, metavar="PATH")
    p.add_argument("--queries", required=True, metavar="FILE",
                   help="text file with one stored id per line")
    p.add_argument("--scop", required=True, metavar="FILE",
                   help="tab-separated classification file (dir.cla layout)")
    p.add_argument("-k", type=_k_list, default=list(range(5, 55, 5)), metavar="5,10,...,50")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP query service")
    p.add_argument("--db", required=True, metavar="PATH")
    p.add_argument("--listen", default="127.0.0.1:8000", metavar="ADDR")
    p.set_defaults(func=_cmd_serve)

    return parser


def _cmd_extract(args) -> int:
    kind = DescriptorKind.from_label(args.kind)
    for entry_id, desc in pipeline.extract_file(args.infile, kind, chain=args.chain):
        values = "\t".join(format(v, ".9g") for v in desc.values)
        print(f"{entry_id}\t{desc.kind.label}\t{values}")
    return 0


def _cmd_index(args) -> int:
    kind = DescriptorKind.from_label(args.kind)
    db, report = pipeline.index_directory(args.dir, kind, workers=args.workers)
    if len(db) == 0:
        raise EmptyDatabase(f"no chains could be indexed from {args.dir}")
    store.save_db(db, args.db)
    print(report.summary())
    return 0


def _cmd_query(args) -> int:
    db = store.load_db(args.db)
    if args.kind is not None and DescriptorKind.from_label(args.kind) is not db.kind:
        raise ParamsMismatch(f"database stores {db.kind.label} descriptors, not {args.kind}")
    for hit in pipeline.query_file(db, args.infile, args.k, chain=args.chain):
        print(f"{hit.rank}\t{hit.id}\t{hit.distance:.6f}")
    return 0


def _cmd_eval(args) -> int:
    db = store.load_db(args.db)
    text = Path(args.queries).read_text()
    query_ids = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    labels = evalkit.parse_scop_classification(Path(args.scop).read_bytes())
    curves = pipeline.evaluate(db, query_ids, labels, args.k)
    print(evalkit.format_curves(curves))
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(args.db, listen=args.listen)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ComogradError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
