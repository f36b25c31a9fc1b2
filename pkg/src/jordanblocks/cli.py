"""Command-line front end: ``jordanblocks --scenario file.json``.

Exit status is 0 when every action passes, 1 when any action fails or a
computation raises, and 2 for unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import sys

from .errors import JordanBlocksError, ParseError
from .runner import dumps, run_scenario
from .scenario import (DEFAULT_TOLERANCES, check_tolerance, load_scenario,
                       parse_tolerances)


def _parse_tol(items):
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ParseError("expected name=value", f"--tol {item}")
        if name not in DEFAULT_TOLERANCES:
            raise ParseError("unknown tolerance", f"--tol {name}")
        try:
            out[name] = check_tolerance(float(value), f"--tol {name}")
        except ValueError:
            raise ParseError("not a number", f"--tol {name}") from None
    return out


def build_parser():
    p = argparse.ArgumentParser(
        prog="jordanblocks",
        description="Run a scenario of Jordan-block computations and print a "
                    "JSON report.")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.add_argument("--tol", nargs="+", action="extend", default=[],
                   metavar="NAME=VALUE",
                   help="tolerance overrides: " + ", ".join(DEFAULT_TOLERANCES))
    p.add_argument("--quiet", action="store_true",
                   help="suppress the summary on standard error")
    p.add_argument("--jobs", type=int, default=1,
                   help="run independent actions on this many threads")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        scn = load_scenario(args.scenario)
        if args.seed is not None:
            if args.seed < 0:
                raise ParseError("seed must be nonnegative", "--seed")
            scn.seed = args.seed
        scn.tolerances = parse_tolerances(_parse_tol(args.tol), "--tol",
                                          base=scn.tolerances)
        if args.jobs < 1:
            raise ParseError("must be positive", "--jobs")
        report, timings = run_scenario(scn, jobs=args.jobs)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except JordanBlocksError as exc:
        # failures while building the ambient space
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = dumps(report)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not args.quiet:
        for rec, t in zip(report["actions"], timings):
            target = rec.get("subspace") or "/".join(
                rec[k] for k in ("left", "right") if k in rec)
            print(f"[{rec['verdict']}] {rec['index']}: {rec['action']} "
                  f"{target} ({t:.3f} s)", file=sys.stderr)
        print(f"overall: {report['verdict']}", file=sys.stderr)
    return 0 if report["verdict"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
