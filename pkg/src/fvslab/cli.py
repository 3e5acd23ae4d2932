"""Command line entry point: ``fvslab`` (or ``python -m fvslab``).

Exit codes: 0 success, 1 a verification failed, 2 bad input, configuration
or a resource cap.
"""

import argparse
import json
import sys
from pathlib import Path

from .constructive import fvs_planar_girth5, fvs_subcubic
from .errors import DomainError, FvsLabError, IntegrityError, ResourceError
from .exact import min_fvs_bruteforce, min_fvs_exact
from .family import generate_family
from .formats import read_graph_file, to_adjacency_text, to_graph6, write_graph6_list
from .harness import SUITES, VerifyConfig, enumerate_graphs, write_report
from .structure import girth, is_planar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FILTERS = ("connected", "planar", "subcubic", "ntdsc", "forbidden_free")
ALIASES = {"no_two_disjoint_short_cycles": "ntdsc"}


def _parse_filters(items):
    """Turn ``--filter`` values into enumerate_graphs keyword arguments."""
    kwargs = {}
    for item in items:
        for token in item.split(","):
            token = ALIASES.get(token.strip(), token.strip())
            if not token:
                continue
            if token.startswith("girth_min="):
                kwargs["girth_min"] = int(token.split("=", 1)[1])
            elif token in FILTERS:
                if token != "connected":
                    kwargs[token] = True
            else:
                raise DomainError(f"unknown filter {token!r}; use {', '.join(FILTERS)} or girth_min=K")
    return kwargs


def cmd_families(args):
    members = generate_family(args.i, args.j, cap=args.cap)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = out / f"F_{args.i}_{args.j}"
    simple = [m for m in members if m.graph.is_simple]
    if len(simple) == len(members):
        write_graph6_list([m.graph for m in members], stem.with_suffix(".g6"))
    sidecar = {
        "i": args.i,
        "j": args.j,
        "count": len(members),
        "epsilon": str(members[0].signature.epsilon) if members else None,
        "members": [
            {"graph6": to_graph6(m.graph) if m.graph.is_simple else None,
             "degree2_count": m.degree2_count,
             "adjacency": to_adjacency_text(m.graph),
             "derivation": m.derivation.to_json()}
            for m in members
        ],
    }
    stem.with_suffix(".json").write_text(json.dumps(sidecar, indent=1))
    print(f"F({args.i},{args.j}): {len(members)} members written to {out}")
    return EXIT_OK


def cmd_enumerate(args):
    kwargs = _parse_filters(args.filter or [])
    count = 0
    with open(args.out, "w") as fh:
        for g in enumerate_graphs(args.max_n, **kwargs):
            fh.write(to_graph6(g) + "\n")
            count += 1
    print(f"{count} graphs written to {args.out}")
    return EXIT_OK


def _construct(g, mode, fallback):
    if mode == "auto":
        mode = "planar5" if g.is_simple and is_planar(g) and girth(g) >= 5 else "subcubic"
    if mode == "planar5":
        return fvs_planar_girth5(g, fallback_exact=fallback)
    return fvs_subcubic(g, fallback_exact=fallback)


def cmd_fvs(args):
    graphs = read_graph_file(args.file)
    traces = []
    for g in graphs:
        if args.method == "exact":
            res = min_fvs_exact(g, timeout=args.timeout)
            row = res.to_json()
        elif args.method == "brute":
            row = min_fvs_bruteforce(g).to_json()
        else:
            cert = _construct(g, args.mode, args.fallback_exact)
            traces.append(cert.to_json())
            row = {"size": cert.size, "witness": sorted(cert.witness),
                   "bound_numerator": cert.bound_numerator, "r_numerator": cert.r_numerator,
                   "fallback_used": cert.fallback_used}
        row["n"], row["m"] = g.n, g.m
        print(json.dumps(row, sort_keys=True))
    if args.trace and args.method == "construct":
        doc = traces[0] if len(traces) == 1 else traces
        Path(args.trace).write_text(json.dumps(doc, indent=1, sort_keys=True))
    return EXIT_OK


def cmd_verify(args):
    cfg = VerifyConfig(max_n=args.max_n, seed=args.seed, random_count=args.random_count,
                       fallback_exact=args.fallback_exact, timing=not args.no_timing)
    if args.report == "-":
        summary = write_report(args.suite, cfg, sys.stdout)
    else:
        with open(args.report, "w", encoding="utf-8") as fh:
            summary = write_report(args.suite, cfg, fh)
    print(json.dumps({"summary": summary.to_json()}, sort_keys=True), file=sys.stderr)
    return EXIT_OK if summary.ok(fallback_allowed=args.fallback_exact) else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="fvslab", description="Feedback vertex set bounds for sparse graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("families", help="family generation")
    fam_sub = fam.add_subparsers(dest="action", required=True)
    gen = fam_sub.add_parser("generate", help="write every member of F(i, j)")
    gen.add_argument("--i", type=int, required=True)
    gen.add_argument("--j", type=int, required=True)
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--cap", type=int, default=20, help="largest vertex count allowed")
    gen.set_defaults(func=cmd_families)

    en = sub.add_parser("enumerate", help="exhaustive connected graphs, one per isomorphism class")
    en.add_argument("--max-n", type=int, required=True)
    en.add_argument("--filter", action="append",
                    help="connected, planar, subcubic, ntdsc, forbidden_free or girth_min=K; repeat or comma-separate")
    en.add_argument("--out", required=True, help="graph6 output file")
    en.set_defaults(func=cmd_enumerate)

    fv = sub.add_parser("fvs", help="feedback vertex set of every graph in FILE")
    fv.add_argument("method", choices=("exact", "brute", "construct"))
    fv.add_argument("file", help="graph6 lines or 'n m' adjacency text")
    fv.add_argument("--mode", choices=("auto", "planar5", "subcubic"), default="auto")
    fv.add_argument("--fallback-exact", action="store_true")
    fv.add_argument("--trace", metavar="PATH",
                    help="write the certificate with its reduction trace as JSON (a list for several graphs)")
    fv.add_argument("--timeout", type=float, default=None, help="seconds, exact method only")
    fv.set_defaults(func=cmd_fvs)

    ve = sub.add_parser("verify", help="run a verification suite and write a JSON-lines report")
    ve.add_argument("--suite", choices=SUITES, required=True)
    ve.add_argument("--max-n", type=int, default=None)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--random-count", type=int, default=500)
    ve.add_argument("--fallback-exact", action="store_true")
    ve.add_argument("--no-timing", action="store_true", help="zero the millis field for byte-stable reports")
    ve.add_argument("--report", required=True, help="output path, or - for stdout")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IntegrityError as exc:
        print(f"fvslab: integrity error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DomainError, ResourceError, FvsLabError, OSError) as exc:
        print(f"fvslab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
