"""Command-line interface: derived tables, ratio search, game runs, verify.

Exit codes: 0 completed legal game / success, 2 bad input, 3 illegal color,
4 budget exhausted, 5 invalid certificate.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (BudgetExhausted, IllegalColor, InvalidCertificate, play,
                     verify_transcript)
from .exactnum import render_rational
from .model import Transcript
from .presenters import make_presenter
from .algorithms import make_algorithm
from .schema import KSchema, builtin_schema, derived_table
from .search import TABLE3_KS, RatioRow, hcn_candidates, ratio_table


def load_schema(name_or_path: str) -> KSchema:
    try:
        return builtin_schema(name_or_path)
    except KeyError:
        pass
    with open(name_or_path, "r", encoding="utf-8") as fh:
        return KSchema.from_json(json.load(fh))


def cmd_tables(args) -> int:
    try:
        s = load_schema(args.schema)
    except (OSError, ValueError, KeyError) as exc:
        print("invalid schema: %s" % exc, file=sys.stderr)
        return 2
    rows = derived_table(s)
    if args.csv:
        print("i,j,x,chi,gamma,delta,scalable_cap")
        for row in rows:
            print(",".join(str(v) for v in row))
    else:
        head = ("i", "j", "x", "chi", "gamma", "delta", "cap")
        widths = [max(len(str(r[c])) for r in rows + [head]) for c in range(7)]
        for r in [head] + rows:
            print("  ".join(str(v).rjust(w) for v, w in zip(r, widths)))
    return 0


def cmd_search(args) -> int:
    if args.k is not None:
        ks = [args.k]
    elif args.hcn_limit is not None:
        ks = [k for k in hcn_candidates(args.hcn_limit) if k >= 3]
    else:
        ks = list(TABLE3_KS)
    rows = ratio_table(ks)
    out_rows = []
    print("k,ratio_exact,ratio_7dp")
    for row in rows:
        if isinstance(row, RatioRow):
            print("%d,%s,%s" % (row.k, render_rational(row.asymptotic_ratio), row.rendered))
            out_rows.append(row.to_json())
        else:
            k, exc = row
            print("%d,error,%s" % (k, exc))
            out_rows.append({"k": str(k), "error": str(exc)})
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(out_rows, fh, indent=2)
    return 0


def cmd_play(args) -> int:
    try:
        presenter = make_presenter(args.presenter, schema_loader=load_schema)
        algorithm = make_algorithm(args.algorithm)
    except (OSError, ValueError, KeyError) as exc:
        print("invalid game setup: %s" % exc, file=sys.stderr)
        return 2
    if args.sep_only:
        if not hasattr(presenter, "sep_only"):
            print("--sep-only only applies to schema presenters", file=sys.stderr)
            return 2
        presenter.sep_only = True
    try:
        report = play(presenter, algorithm, budget=args.budget)
    except IllegalColor as exc:
        print("illegal color: %s" % exc, file=sys.stderr)
        return 3
    except BudgetExhausted as exc:
        print("budget exhausted: %s" % exc, file=sys.stderr)
        return 4
    except InvalidCertificate as exc:
        print("invalid certificate: %s" % exc, file=sys.stderr)
        return 5
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2)
    print("colors_used: %d" % report.colors_used)
    print("certificate_colors: %d" % report.certificate_colors)
    print("violations: %d" % len(report.violations))
    for phase, st in report.per_phase_stats.items():
        print("  %s: %d intervals, %d new colors" % (phase, st["intervals"], st["new_colors"]))
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.transcript, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "transcript" in data:
            data = data["transcript"]  # accept full GameReport files too
        t = Transcript.from_json(data)
    except (OSError, ValueError, KeyError) as exc:
        print("cannot parse transcript: %s" % exc, file=sys.stderr)
        return 2
    viols = verify_transcript(t)
    print("entries: %d, colors: %d" % (len(t), len(t.colors())))
    for v in viols:
        print("violation: %s" % v.describe())
    print("violations: %d" % len(viols))
    return 0 if not viols else 3


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="bandcolor")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("tables", help="derived j/x/chi/gamma/delta table of a schema")
    p.add_argument("--schema", required=True,
                   help='builtin name ("s120", "s120-scalable") or JSON path')
    p.add_argument("--csv", action="store_true")
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("search", help="synthesize strategies and ratio tables")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=int)
    g.add_argument("--table3", action="store_true",
                   help="all 24 published k values (default)")
    g.add_argument("--hcn-limit", type=int,
                   help="every highly composite k up to this limit")
    p.add_argument("--json", help="also write rows (with strategies) to this file")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("play", help="run a presenter against an algorithm")
    p.add_argument("--presenter", required=True,
                   help="schema:<name-or-path> | kt:<omega> | unit:<k>")
    p.add_argument("--algorithm", required=True,
                   help="first-fit | best-fit | worst-fit | random-fit:<seed>")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--sep-only", action="store_true",
                   help="play only the separation phase")
    p.add_argument("--out", help="write the GameReport JSON here")
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("verify", help="re-validate a transcript JSON file")
    p.add_argument("transcript")
    p.set_defaults(fn=cmd_verify)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
