"""Look for instances that sit on the bounds, which uniform sampling never reaches.

Random quadrics over GF(101) are generic, so dim I_3 for two extra quadrics
comes out at 34 or 35 while the bound is 30.  Here the regular sequence is
the squares x_i^2 (optionally after a random change of coordinates) and the
extras are random squarefree monomials or binomials, which is where
low-dimensional intersections live.  Every instance is checked and the
smallest dim I_3 per defect is reported together with an example.
"""

import argparse
import itertools
import json

import numpy as np

from egh.algebra import Form, RingContext
from egh.errors import InputError
from egh.lpp import DegreeVector, lpp_defect
from egh.serialize import instance_to_dict
from egh.verify import IdealInstance, defect2_bound_check, four_term_identity, lpp_comparison_check


def random_linear_change(ctx, rng):
    while True:
        M = rng.integers(0, ctx.p, size=(ctx.n, ctx.n))
        if round(np.linalg.det(M)) % ctx.p:
            break
    x = [Form.variable(ctx, i) for i in range(ctx.n)]
    ys = []
    for row in M:
        y = Form.zero(ctx, 1)
        for c, xi in zip(row, x):
            y = y + xi * int(c)
        ys.append(y)
    return ys


def substitute(f, ys):
    out = Form.zero(f.ctx, f.degree)
    for mono, c in f.terms.items():
        term = None
        for i, a in enumerate(mono.exponents):
            for _ in range(a):
                term = ys[i] if term is None else term * ys[i]
        out = out + term * c
    return out


def sparse_extras(ctx, k, rng):
    pairs = list(itertools.combinations(range(ctx.n), 2))
    x = [Form.variable(ctx, i) for i in range(ctx.n)]
    out = []
    for _ in range(k):
        i, j = pairs[rng.integers(len(pairs))]
        g = x[i] * x[j]
        if rng.random() < 0.4:
            a, b = pairs[rng.integers(len(pairs))]
            g = g + x[a] * x[b] * int(rng.integers(1, ctx.p))
        out.append(g)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-defect", type=int, default=6)
    ap.add_argument("--change-coordinates", action="store_true")
    args = ap.parse_args()
    ctx = RingContext(args.n, 101)
    rng = np.random.default_rng(args.seed)
    x = [Form.variable(ctx, i) for i in range(ctx.n)]
    best = {}
    failures = 0
    for _ in range(args.trials):
        delta = int(rng.integers(1, args.max_defect + 1))
        ci = [xi * xi for xi in x]
        extras = sparse_extras(ctx, delta, rng)
        if args.change_coordinates:
            ys = random_linear_change(ctx, rng)
            ci = [substitute(f, ys) for f in ci]
            extras = [substitute(g, ys) for g in extras]
        try:
            inst = IdealInstance(ctx, ci, extras)
        except InputError:
            continue
        dim3 = inst.piece_dim(3)
        ok = lpp_comparison_check(inst).holds
        if delta == 2:
            ok = ok and defect2_bound_check(inst).holds and four_term_identity(inst).holds
        failures += not ok
        if delta not in best or dim3 < best[delta][0]:
            best[delta] = (dim3, instance_to_dict(inst))
    a = DegreeVector.quadrics(args.n)
    for delta in sorted(best):
        lpp = lpp_defect(ctx, a, 2, delta).piece_dim(3)
        print(json.dumps({"defect": delta, "min_dim_I3": best[delta][0], "lpp_dim_L3": lpp,
                          "extras": best[delta][1]["extras"]}))
    print(json.dumps({"trials": args.trials, "failures": failures}))


if __name__ == "__main__":
    main()
