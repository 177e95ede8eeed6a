"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 data error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from . import __version__, kernels
from .crossval import make_seeds, scan
from .data import DEFAULT_TRAIN_FRACTION, Task, emit_synthetic, filter_rows, load_csv, write_csv
from .errors import TwoTierError
from .report import (FORMATS, read_report, rows_from_records, summary_csv, summary_table,
                     write_report)
from .scoring import full_data_score
from .stats import summarize
from .tree import fit_two_tier, render

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("twotier")


class UsageError(Exception):
    pass


def _parse_filter(text: str):
    try:
        name, lo, hi = text.rsplit(":", 2)
        return name, float(lo) if lo else float("-inf"), float(hi) if hi else float("inf")
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected FEATURE:LO:HI (LO inclusive, HI exclusive), got {text!r}") from None


def _fraction(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {v}")
    return v


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="numeric CSV with a header row")
    p.add_argument("--target", required=True, help="name of the target column")
    p.add_argument("--task", choices=[t.value for t in Task], default=Task.REGRESSION.value)
    p.add_argument("--filter", type=_parse_filter, action="append", default=[],
                   metavar="FEATURE:LO:HI", help="keep rows with LO <= FEATURE < HI")


def _load(args):
    d = load_csv(args.input, args.target, args.task)
    for name, lo, hi in args.filter:
        d = filter_rows(d, name, lo, hi)
    return d


def cmd_synth(args) -> int:
    write_csv(emit_synthetic(), args.out, target_name="target")
    print(f"wrote 20 rows to {args.out}")
    return EXIT_OK


def cmd_fit(args) -> int:
    names = [f.strip() for f in (args.features or "").split(",") if f.strip()]
    if not names:
        raise UsageError("--features needs at least one feature name")
    d = _load(args)
    subset = d.indices_of(names)
    tree = fit_two_tier(d, range(d.n_samples), subset)
    print("features: " + ", ".join(names))
    print(render(tree))
    print(f"training score: {full_data_score(d, subset):.6f}")
    return EXIT_OK


def cmd_scan(args) -> int:
    d = _load(args)
    seeds = make_seeds(args.splits, args.seed_base)
    t0 = time.perf_counter()
    result = scan(d, seeds, args.alpha, args.train_fraction, workers=args.workers,
                  floor_scope=args.floor_scope, complementarity=args.complementarity)
    log.info("scan took %.2fs with %s kernel", time.perf_counter() - t0, kernels.BACKEND_NAME)
    rows = rows_from_records(d, result.records)
    meta = {
        "input": os.path.basename(args.input), "target": args.target, "task": d.task.value,
        "n_samples": d.n_samples, "features": list(d.feature_names),
        "splits": args.splits, "seed_base": args.seed_base,
        "train_fraction": args.train_fraction, "alpha": args.alpha,
        "floor_scope": args.floor_scope, "complementarity": args.complementarity,
        "complementary_pairs": len(result.pairs),
    }
    if args.out:
        write_report(args.out, rows, args.format, meta)
    else:
        from .report import to_csv, to_json
        sys.stdout.write(to_csv(rows) if args.format == "csv" else to_json(rows, meta))
    msg = f"{len(rows)} triples" if rows else "0 triples: no significant triple with interference"
    print(msg, file=sys.stderr)
    return EXIT_OK


def cmd_summarize(args) -> int:
    named, pooled = [], []
    for path in args.reports:
        rows = read_report(path)
        pooled.extend(rows)
        name = os.path.splitext(os.path.basename(path))[0]
        if rows:
            named.append((name, summarize(rows)))
        else:
            print(f"{name}: 0 triples, skipped", file=sys.stderr)
    if pooled:
        named.append(("ALL", summarize(pooled)))
    sys.stdout.write(summary_table(named))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(summary_csv(named))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twotier",
        description="Two-tier decision trees and interfering-feature analysis.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="write the 20-row synthetic demonstration dataset")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)

    f = sub.add_parser("fit", help="fit one tree on all rows and print it with its score")
    _add_data_args(f)
    f.add_argument("--features", required=True, help="comma-separated feature names")
    f.set_defaults(func=cmd_fit)

    c = sub.add_parser("scan", help="cross-validated search for triples with interference")
    _add_data_args(c)
    c.add_argument("--splits", type=int, default=1000, help="number of seeded splits R")
    c.add_argument("--seed-base", type=int, default=0)
    c.add_argument("--train-fraction", type=_fraction, default=DEFAULT_TRAIN_FRACTION)
    c.add_argument("--alpha", type=_fraction, default=0.05)
    c.add_argument("--out")
    c.add_argument("--format", choices=FORMATS, default="csv")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--floor-scope", choices=("train", "full"), default="train")
    c.add_argument("--complementarity", choices=("cv", "full"), default="cv")
    c.set_defaults(func=cmd_scan)

    m = sub.add_parser("summarize", help="per-dataset summary of one or more scan reports")
    m.add_argument("reports", nargs="+")
    m.add_argument("--out", help="also write the summary as CSV")
    m.set_defaults(func=cmd_summarize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "splits", 2) < 2:
        print("twotier: error: --splits must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "workers", 1) < 1:
        print("twotier: error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"twotier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"twotier: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (TwoTierError, ValueError) as exc:
        print(f"twotier: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
