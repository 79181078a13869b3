"""Command line: ``egh hilbert | check | lpp | search | checkpoints``.

Exit codes: 0 every check holds, 1 a check failed, 2 usage error,
3 bad input, 4 random generation gave up.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import RingContext
from .errors import EghError, GenerationFailure, InputError, ParseError
from .lpp import DegreeVector, lpp_defect

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT, EXIT_GENERATION = 0, 1, 2, 3, 4


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _defect_arg(text: str):
    if "-" in text.strip("-"):
        lo, hi = text.split("-", 1)
        return int(lo), int(hi)
    return int(text)


def _seed(text: str) -> int:
    return int(text, 0)


def cmd_hilbert(args) -> int:
    from .serialize import load_ideal
    inst = load_ideal(args.ideal)
    D = args.max_degree if args.max_degree is not None else inst.socle_degree + 1
    hf = inst.hilbert(D)
    if args.table:
        for d, v in enumerate(hf):
            print(f"{d}\t{v}")
    else:
        print(json.dumps(list(hf)))
    return EXIT_OK


def cmd_check(args) -> int:
    from .serialize import load_ideal
    from .verify import egh_d_check, egh_full_check
    inst = load_ideal(args.ideal)
    if args.full or args.degree is None:
        r = egh_full_check(inst)
        out = {"check": "egh_full", "holds": r.holds, "target": list(r.target)}
        if r.lpp is not None:
            out["lpp_gens"] = [m.to_string(inst.ctx.var_names) for m in r.lpp.lex_gens]
            out["lpp_hilbert"] = list(r.lpp_hilbert)
        if r.failure:
            out["failure"] = r.failure
    else:
        r = egh_d_check(inst, args.degree)
        out = {"check": f"egh_d({args.degree})", "holds": r.holds, **r.values(),
               "lpp_gens": [m.to_string(inst.ctx.var_names) for m in r.lpp.lex_gens]}
        if r.counterexample:
            out["counterexample"] = r.counterexample
    print(json.dumps(out))
    return EXIT_OK if out["holds"] else EXIT_VIOLATION


def cmd_lpp(args) -> int:
    ctx = RingContext(args.n, args.p)
    a = DegreeVector(args.a) if args.a else DegreeVector.quadrics(args.n)
    if a.n != args.n:
        raise InputError(f"{a.n} degrees for {args.n} variables")
    L = lpp_defect(ctx, a, args.degree, args.defect)
    top = args.max_degree if args.max_degree is not None else a.socle_degree + 1
    print(json.dumps({
        "powers": list(a.a),
        "lex_gens": [m.to_string(ctx.var_names) for m in L.lex_gens],
        "piece_dims": [L.piece_dim(d) for d in range(top + 1)],
        "hilbert": list(L.hilbert(top)),
    }))
    return EXIT_OK


def cmd_search(args) -> int:
    from .harness import SearchConfig, run_search
    cfg = SearchConfig(n=args.n, p=args.p, a=args.a, defect=args.defect, trials=args.trials, seed=args.seed,
                       checks=tuple(c for c in args.checks.split(",") if c), out=args.out, mode=args.mode,
                       max_extras=args.max_extras, cap=args.cap, jobs=args.jobs)
    first_failure = []

    def note(rec):
        if rec.failed and not first_failure:
            first_failure.append(rec)

    summary = run_search(cfg, note)
    print(json.dumps(summary.to_json()))
    if first_failure:
        rec = first_failure[0]
        print(json.dumps({"failing_trial": rec.index, "seed": rec.seed, "ideal": rec.ideal,
                          "outcomes": rec.outcomes, "values": rec.values}), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_checkpoints(args) -> int:
    from .checkpoints import run_checkpoints
    results = run_checkpoints(args.seed, args.trials)
    bad = False
    for r in results:
        print(r.line())
        for f in r.failures:
            bad = True
            print(json.dumps(f), file=sys.stderr)
        bad = bad or not r.passed
    return EXIT_VIOLATION if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="egh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", help="Hilbert function of an ideal file")
    h.add_argument("--ideal", required=True)
    h.add_argument("--max-degree", type=int)
    h.add_argument("--table", action="store_true", help="print degree/value rows instead of JSON")
    h.set_defaults(func=cmd_hilbert)

    c = sub.add_parser("check", help="compare an ideal file with lex-plus-powers ideals")
    c.add_argument("--ideal", required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int)
    g.add_argument("--full", action="store_true")
    c.set_defaults(func=cmd_check)

    lp = sub.add_parser("lpp", help="powers plus a degree-d lex segment")
    lp.add_argument("--n", type=int, required=True)
    lp.add_argument("--a", type=_int_list)
    lp.add_argument("--defect", type=int, required=True)
    lp.add_argument("--degree", type=int, required=True)
    lp.add_argument("--p", type=int, default=101)
    lp.add_argument("--max-degree", type=int)
    lp.set_defaults(func=cmd_lpp)

    s = sub.add_parser("search", help="seeded random trials with a JSONL log")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, default=101)
    s.add_argument("--a", type=_int_list)
    s.add_argument("--defect", type=_defect_arg, default=2, help="count or lo-hi range")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=_seed, required=True)
    s.add_argument("--checks", required=True, help="comma-separated check names")
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--mode", choices=("defect", "mixed"), default="defect")
    s.add_argument("--max-extras", type=int, default=10)
    s.add_argument("--cap", type=int, default=1000, help="attempts before random generation gives up")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("checkpoints", help="fixed battery on the five-variable families")
    k.add_argument("--seed", type=_seed, default=0)
    k.add_argument("--trials", type=int, default=100)
    k.set_defaults(func=cmd_checkpoints)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except GenerationFailure as exc:
        print(f"egh: generation failure: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except (InputError, ParseError, EghError, ValueError) as exc:
        print(f"egh: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"egh: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
