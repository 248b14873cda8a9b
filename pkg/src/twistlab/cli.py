"""Command-line entry point.

    twistlab run --suite diagrams --dims 16,64 --samples 100 --seed 7 --out DIR
    twistlab list-suites

A JSON config file mirroring ExperimentConfig can be passed with --config;
explicit flags override it. The TWISTLAB_SEED environment variable is the
fallback seed when neither the flags nor the config provide one. Exit
status is nonzero iff any check fails.
"""

import argparse
import json
import os
import sys

from .experiments import ExperimentConfig, list_suites, run_suite
from .report import emit_report


def _parse_dims(text):
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dims list {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="twistlab",
                                     description="twisted-space verification suites")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run one verification suite")
    runp.add_argument("--suite", help="suite name (see list-suites)")
    runp.add_argument("--dims", type=_parse_dims, default=None,
                      help="comma-separated increasing dimension ladder")
    runp.add_argument("--samples", type=int, default=None)
    runp.add_argument("--seed", type=int, default=None)
    runp.add_argument("--config", default=None, help="JSON config file")
    runp.add_argument("--out", default="-",
                      help="output directory for report.json/curves.csv, or - for stdout")
    runp.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                      help="override a check threshold")
    sub.add_parser("list-suites", help="print the available suite names")
    return parser


def _load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise SystemExit("config file must hold a JSON object")
    return data


def _resolve_config(args):
    file_cfg = _load_config(args.config) if args.config else {}
    suite = args.suite or file_cfg.get("suite")
    if not suite:
        raise SystemExit("no suite given (use --suite or a config file)")
    dims = args.dims if args.dims is not None else tuple(file_cfg.get("dims", ()))
    samples = args.samples if args.samples is not None else int(file_cfg.get("samples", 0))
    seed = args.seed
    if seed is None:
        seed = file_cfg.get("seed")
    if seed is None:
        seed = os.environ.get("TWISTLAB_SEED")
    seed = int(seed) if seed is not None else 0
    tolerances = dict(file_cfg.get("tolerances", {}))
    for item in args.tol:
        name, _, value = item.partition("=")
        if not value:
            raise SystemExit(f"bad --tol override {item!r}, expected NAME=VALUE")
        tolerances[name] = float(value)
    params = dict(file_cfg.get("params", {}))
    try:
        return ExperimentConfig(suite=suite, dims=dims, samples=samples, seed=seed,
                                tolerances=tolerances, params=params)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "list-suites":
        for name in list_suites():
            print(name)
        return 0
    cfg = _resolve_config(args)
    report = run_suite(cfg)
    emit_report(report, args.out)
    if args.out != "-":
        for check in report.checks:
            status = "pass" if check.passed else "FAIL"
            print(f"{status} {check.name}: {check.value:.6g}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
