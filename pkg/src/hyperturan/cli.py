"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 some result was degraded (a capacity
limit forced a heuristic or a node budget ran out); output is still written.
Flags may also come from ``--config FILE`` holding ``key = value`` lines;
explicit flags win.  Environment variables are never read.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .audit import CONSTANTS, structure_report
from .census import (conflict_constraints, enumerate_f5, enumerate_k4minus,
                     untouched_k4minus_witness)
from .core import Hypergraph3, decode, encode, load
from .errors import HyperturanError
from .experiments import MODES, SweepSpec, rows_to_csv, run_sweep, witness_scan
from .partition import TriPartition, max_tripartite_exact, max_tripartite_local
from .sampling import SampleSpec, sample, threshold_p
from .solver import DEFAULT_BUDGET, max_f5free_bnb, max_f5free_oracle

EXIT_OK, EXIT_INPUT, EXIT_DEGRADED = 0, 2, 3


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError(f"{text} is not a 64-bit unsigned integer")
    return v


def _prob(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return v


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True)


# -- subcommands ---------------------------------------------------------------

def cmd_sample(args) -> int:
    H = sample(SampleSpec(args.n, args.p, args.seed))
    _emit(encode(H), args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    H = load(args.file)
    if args.motif == "f5":
        copies = enumerate_f5(H)
        count = len(copies)
        doc = {"motif": "f5", "count": count,
               "copies": [{"vertices": list(c.vertices), "edge_indices": list(c.edge_indices)}
                          for c in copies],
               "constraints": [list(c) for c in conflict_constraints(H)]}
    elif args.motif == "k4minus":
        copies = enumerate_k4minus(H)
        count = len(copies)
        doc = {"motif": "k4minus", "count": count,
               "copies": [{"vertices": list(c.vertices), "edge_indices": list(c.edge_indices)}
                          for c in copies]}
    else:
        w = untouched_k4minus_witness(H)
        count = 0 if w is None else 1
        doc = {"motif": "witness", "present": w is not None,
               "witness": None if w is None else {"vertices": list(w.vertices),
                                                 "edge_indices": list(w.edge_indices)}}
    _emit(str(count) if args.count else _dumps(doc), args.out)
    return EXIT_OK


def cmd_solve_tripartite(args) -> int:
    H = load(args.file)
    if args.local:
        part, count = max_tripartite_local(H, seed=args.seed, restarts=args.restarts)
    else:
        part, count = max_tripartite_exact(H, limit_n=args.limit_n)
    _emit(_dumps({"count": count, "assignment": list(part.assignment)}), args.out)
    return EXIT_OK


def cmd_solve_f5free(args) -> int:
    H = load(args.file)
    if args.oracle:
        res = max_f5free_oracle(H)
    else:
        res = max_f5free_bnb(H, budget=args.budget)
    _emit(_dumps(res.to_json(timing=not args.no_timing)), args.out)
    return EXIT_OK if res.optimal else EXIT_DEGRADED


def _load_subset(path: str, G: Hypergraph3):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and "edge_indices" in doc:
        return [int(i) for i in doc["edge_indices"]]
    if isinstance(doc, dict) and "chosen" in doc:
        return [int(i) for i in doc["chosen"]]
    return decode(json.dumps(doc))


def cmd_audit(args) -> int:
    if args.target == "constants":
        _emit(_dumps(CONSTANTS.to_json()), args.out)
        return EXIT_OK
    if args.f5sub is None or args.partition is None or args.p is None:
        raise HyperturanError("audit FILE needs --f5sub, --partition and --p")
    G = load(args.target)
    F = _load_subset(args.f5sub, G)
    with open(args.partition, encoding="utf-8") as fh:
        P = TriPartition.from_json(json.load(fh))
    rep = structure_report(G, F, P, args.p)
    _emit(_dumps(rep.to_json()), args.out)
    return EXIT_OK


def _p_grid(args) -> list[float]:
    if args.p_threshold:
        kind, K = args.p_threshold
        return [threshold_p(kind, float(K), n) for n in args.n]
    return list(args.p)


def cmd_sweep(args) -> int:
    if args.p_threshold and len(args.n) != 1:
        raise HyperturanError("--p-threshold needs exactly one --n value")
    spec = SweepSpec(n_list=args.n, p_grid=_p_grid(args), trials=args.trials,
                     master_seed=args.seed, mode=args.mode, out=None,
                     budget=args.budget, all_optima=args.all_optima)
    rows = run_sweep(spec, jobs=args.jobs)
    _emit(rows_to_csv(rows), args.out)
    return EXIT_DEGRADED if any(r.degraded for r in rows) else EXIT_OK


def cmd_witness_scan(args) -> int:
    p = args.p if args.p is not None else threshold_p("lower", args.K, args.n)
    rep = witness_scan(args.n, p, args.trials, args.seed)
    _emit(_dumps(rep), args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="hyperturan", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="flat key=value file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True)
    leaves = []

    def leaf(p):
        p.add_argument("--out", "-o", help="output file (default stdout)")
        leaves.append(p)
        return p

    p = leaf(sub.add_parser("sample", help="sample G^3(n, p)"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_prob, required=True)
    p.add_argument("--seed", type=_u64, default=0)
    p.set_defaults(func=cmd_sample)

    p = leaf(sub.add_parser("census", help="count F5 / K4^- copies or find an untouched K4^-"))
    p.add_argument("file")
    p.add_argument("--motif", choices=("f5", "k4minus", "witness"), default="f5")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="full JSON listing (default)")
    g.add_argument("--count", action="store_true", help="print only the count")
    p.set_defaults(func=cmd_census)

    solve = sub.add_parser("solve", help="exact or heuristic solvers")
    ssub = solve.add_subparsers(dest="problem", required=True)
    p = leaf(ssub.add_parser("tripartite", help="largest tripartite subhypergraph t(H)"))
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exhaustive search (default)")
    g.add_argument("--local", action="store_true", help="multi-restart local search")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--limit-n", type=int, default=16)
    p.set_defaults(func=cmd_solve_tripartite)

    p = leaf(ssub.add_parser("f5free", help="maximum F5-free subhypergraph"))
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--oracle", action="store_true", help="exhaustive reference solver")
    g.add_argument("--bnb", action="store_true", help="branch and bound (default)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--no-timing", action="store_true", help="omit wallclock for reproducible output")
    p.set_defaults(func=cmd_solve_f5free)

    p = leaf(sub.add_parser("audit", help="structure report, or 'audit constants'"))
    p.add_argument("target", help="hypergraph JSON file, or the word 'constants'")
    p.add_argument("--f5sub", help="F5-free subset: hypergraph JSON or {\"edge_indices\": [...]}")
    p.add_argument("--partition", help='{"assignment": [...]} or {"n": N, "classes": [[...],[...],[...]]}')
    p.add_argument("--p", type=_prob)
    p.set_defaults(func=cmd_audit)

    p = leaf(sub.add_parser("sweep", help="experiment sweep to CSV"))
    p.add_argument("--n", type=int, nargs="+", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=_prob, nargs="+")
    g.add_argument("--p-threshold", nargs=2, metavar=("KIND", "K"),
                   help="p from threshold_p(KIND, K, n) for the single --n value")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--mode", choices=MODES, default="bnb")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--all-optima", action="store_true",
                   help="oracle mode: test every maximum subset (m <= 18)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="accepted for symmetry; sweeps carry no timing")
    p.set_defaults(func=cmd_sweep)

    p = leaf(sub.add_parser("witness-scan", help="search sampled hypergraphs for an untouched K4^-"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_prob, help="default: 0.1 sqrt(ln n)/n, i.e. threshold_p(lower, --K, n)")
    p.add_argument("--K", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=_u64, default=0)
    p.set_defaults(func=cmd_witness_scan)
    return parser, leaves


def read_config(path: str) -> dict[str, str]:
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise HyperturanError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


def _apply_config(leaves, cfg: dict[str, str]) -> None:
    for p in leaves:
        defaults = {}
        for action in p._actions:
            if action.dest not in cfg:
                continue
            raw = cfg[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
            elif action.nargs in ("+", "*") or isinstance(action.nargs, int):
                defaults[action.dest] = [action.type(x) if action.type else x
                                         for x in raw.replace(",", " ").split()]
            else:
                defaults[action.dest] = action.type(raw) if action.type else raw
            if action.required:
                action.required = False
        for group in p._mutually_exclusive_groups:
            if group.required and any(a.dest in defaults for a in group._group_actions):
                group.required = False
        p.set_defaults(**defaults)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, leaves = build_parser()
    try:
        # read --config before the real parse so it can satisfy required flags
        pre_parser = argparse.ArgumentParser(add_help=False)
        pre_parser.add_argument("--config")
        pre, _ = pre_parser.parse_known_args(argv)
        if pre.config:
            _apply_config(leaves, read_config(pre.config))
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    except (HyperturanError, OSError, ValueError) as exc:
        print(f"hyperturan: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
