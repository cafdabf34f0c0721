"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 I/O or decode failure, 3 internal
numerical failure.
"""

import argparse
import json
import logging
import sys

import numpy as np

from .config import PersimConfig, load_config
from .converters import convert_live, convert_tid2013
from .errors import ConfigError, DecodeError, ManifestError, ParameterError, ShapeError
from .harness import METRICS, compare_images, emit_scatter, evaluate_database, metric_id
from .imageio import read_rgb
from .manifest import load_manifest
from .stats import LOGISTIC_VARIANTS

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _config(path):
    return load_config(path) if path else PersimConfig()


def cmd_compare(args):
    cfg = _config(args.config)
    ref, dist = read_rgb(args.ref), read_rgb(args.dist)
    if ref.shape != dist.shape:
        raise ShapeError(f"image sizes differ: {ref.shape[1]}x{ref.shape[0]} vs "
                         f"{dist.shape[1]}x{dist.shape[0]}")
    scores = compare_images(ref, dist, cfg)
    if args.json:
        record = dict(scores)
        record.update(reference=args.ref, distorted=args.dist,
                      config_fingerprint=cfg.fingerprint())
        print(json.dumps(record, sort_keys=True))
    else:
        for name, value in scores.items():
            print(f"{name}\t{value!r}")
    return EXIT_OK


def cmd_evaluate(args):
    cfg = _config(args.config)
    metrics = [m for m in args.metrics.split(",") if m.strip()]
    try:
        metrics = [metric_id(m) for m in metrics]
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc
    if not metrics:
        raise UsageError("--metrics must name at least one metric")
    groups = None
    if args.groups:
        with open(args.groups, encoding="utf-8") as fh:
            groups = json.load(fh)
    manifest = load_manifest(args.manifest, database=args.database,
                             convention="DMOS" if args.dmos else "MOS")
    report = evaluate_database(manifest, metrics, cfg, jobs=args.jobs,
                               logistic=args.logistic, groups=groups)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.scatter:
        emit_scatter(report, args.scatter, metric=args.scatter_metric or metrics[0],
                     category=args.scatter_category)
    if args.json:
        sys.stdout.write(report.to_json())
    elif args.csv:
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.format_table())
    return EXIT_OK


def cmd_convert(args):
    fn = convert_live if args.command == "convert-live" else convert_tid2013
    try:
        n = fn(args.root, args.out)
    except (KeyError, ValueError) as exc:
        raise DecodeError(f"{args.root}: unexpected database layout: {exc}") from exc
    print(f"wrote {n} rows to {args.out}")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="persim", description="PerSIM image quality metric and IQA evaluation.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compare", help="score one reference/distorted image pair")
    c.add_argument("ref")
    c.add_argument("dist")
    c.add_argument("--json", action="store_true", help="print a single JSON object")
    c.add_argument("--config", help="JSON file overriding PersimConfig fields")
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("evaluate", help="score a database manifest and correlate with MOS")
    e.add_argument("--manifest", required=True, help="CSV with ref,dist,score,distortion,category")
    e.add_argument("--metrics", default="persim",
                   help=f"comma-separated subset of {','.join(METRICS)} (default: persim)")
    e.add_argument("--out", help="write the full JSON report here")
    e.add_argument("--scatter", help="write scatter-plot CSV here")
    e.add_argument("--scatter-metric", help="metric for --scatter (default: first metric)")
    e.add_argument("--scatter-category", help="restrict --scatter to one category")
    e.add_argument("--config", help="JSON file overriding PersimConfig fields")
    e.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    e.add_argument("--dmos", action="store_true", help="scores are DMOS (lower is better)")
    e.add_argument("--database", help="database id for the report (default: manifest stem)")
    e.add_argument("--logistic", choices=LOGISTIC_VARIANTS, default="standard")
    e.add_argument("--groups", help="JSON {name: [distortion, ...]} for extra report rows")
    fmt = e.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print the full JSON report")
    fmt.add_argument("--csv", action="store_true", help="print flat CSV rows")
    e.set_defaults(func=cmd_evaluate)

    for name, helptext in (("convert-live", "build a manifest from a LIVE release 2 tree"),
                           ("convert-tid2013", "build a manifest from a TID2013 tree")):
        cv = sub.add_parser(name, help=helptext)
        cv.add_argument("root")
        cv.add_argument("out")
        cv.set_defaults(func=cmd_convert)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"persim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ManifestError, DecodeError, ShapeError, ParameterError, OSError,
            json.JSONDecodeError) as exc:
        print(f"persim: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, np.linalg.LinAlgError, ValueError) as exc:
        print(f"persim: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
