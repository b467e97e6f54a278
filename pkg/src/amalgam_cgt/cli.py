"""Command-line driver.

    amalgam-cgt verify <scenario>|all [--format json|text] [--max-cosets N]
                       [--strategy hlt|felsch] [--time-cap SECONDS] [--config FILE]
    amalgam-cgt enumerate (--presentation FILE | --catalog NAME) [--subgroup WORDS]
    amalgam-cgt order --generators FILE
    amalgam-cgt list

Exit status: 0 when everything passes, 1 when a claim fails, 2 on usage or
resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from .coset_enum import STRATEGIES, EnumerationLimits, LimitExceeded, enumerate_cosets, table_to_dict
from .perm import parse_generators
from .presentation import PresentationError, parse_presentation
from .scenarios import (VerifyConfig, list_scenarios, results_to_json, results_to_text,
                        run_scenario)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amalgam-cgt", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification scenarios")
    v.add_argument("scenario", help="scenario name or 'all'")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--max-cosets", type=_positive_int)
    v.add_argument("--strategy", choices=STRATEGIES)
    v.add_argument("--time-cap", type=_positive_float, help="seconds per scenario")
    v.add_argument("--config", help="JSON file with VerifyConfig fields")
    v.add_argument("--timing", action="store_true", help="include wall times in the report")

    e = sub.add_parser("enumerate", help="coset enumeration")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--presentation", help="presentation file")
    src.add_argument("--catalog", choices=cat.NAMES)
    e.add_argument("--subgroup", action="append", default=[],
                   help="subgroup generator words, separated by ';' (repeatable)")
    e.add_argument("--max-cosets", type=_positive_int, default=EnumerationLimits.max_cosets)
    e.add_argument("--strategy", choices=STRATEGIES, default="hlt")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("--dump", help="write the closed coset table as JSON to this file")

    o = sub.add_parser("order", help="order of a permutation group")
    o.add_argument("--generators", required=True, help="file: 'degree N' then one cycle string per line")

    sub.add_parser("list", help="list scenario names")
    return p


def _verify(args) -> int:
    cfg = VerifyConfig.from_file(args.config) if args.config else VerifyConfig()
    cfg = cfg.replace(max_cosets=args.max_cosets, strategy=args.strategy, time_cap=args.time_cap,
                      timing=True if args.timing else None)
    names = list_scenarios() if args.scenario == "all" else [args.scenario]
    unknown = [n for n in names if n not in list_scenarios()]
    if unknown:
        print(f"unknown scenario {unknown[0]!r}; known: {', '.join(list_scenarios())}", file=sys.stderr)
        return EXIT_ERROR
    results = [run_scenario(n, cfg) for n in names]
    out = results_to_json(results) if args.format == "json" else results_to_text(results)
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _enumerate(args) -> int:
    if args.catalog:
        entry = cat.catalog(args.catalog)
        P, sub = entry.presentation, list(entry.subgroup_words)
    else:
        with open(args.presentation) as fh:
            P = parse_presentation(fh.read())
        sub = []
    for chunk in args.subgroup:
        sub.extend(P.word(w) for w in chunk.split(";") if w.strip())
    t = enumerate_cosets(P, sub, EnumerationLimits(args.max_cosets, args.strategy))
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump(table_to_dict(t), fh)
    stats = {k: v for k, v in t.stats.items() if k != "seconds"}
    if args.format == "json":
        print(json.dumps({"index": t.live_count, **stats}))
    else:
        print(f"index {t.live_count}")
        for k, v in stats.items():
            print(f"{k} {v}")
    return EXIT_OK


def _order(args) -> int:
    with open(args.generators) as fh:
        G = parse_generators(fh.read())
    print(G.order())
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "enumerate":
            return _enumerate(args)
        if args.command == "order":
            return _order(args)
        print("\n".join(list_scenarios()))
        return EXIT_OK
    except (LimitExceeded, MemoryError) as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, KeyError, PresentationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
