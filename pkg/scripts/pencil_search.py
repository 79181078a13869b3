"""Exhaustive search for quadrics g, h with gA_1 = hA_1 of full dimension.

For a random quadric regular sequence c in five variables over a small field
this walks over every g in A_2 = (R/c)_2 up to scaling, keeps those with
dim gA_1 = 5, and solves the linear condition ``qA_1 in gA_1`` for q in A_2.
A solution space of dimension above one gives an independent h with the
same image.  With n = 4 every full-rank pair qualifies (A_3 is 4-dimensional),
so the script also tabulates how often such a pencil has a GF(p)-rational
witness, i.e. a member with a nonzero linear annihilator.

    python3 scripts/pencil_search.py --p 3 --quotients 5
"""

import argparse
import itertools
import json
import time

import numpy as np

from egh import linalg
from egh.algebra import Form, RingContext, exponent_vectors
from egh.graded import ArtinQuotient
from egh.sampling import make_rng, random_form, random_regular_sequence, trial_seed
from egh.verify import pencil_report


def same_image_partners(A):
    """Yield (g coords, dim of {q : qA_1 in gA_1}) over all g in A_2 up to scaling."""
    ctx, p, T = A.ctx, A.ctx.p, A.tower
    x = [Form.variable(ctx, i) for i in range(ctx.n)]
    mons = [Form.monomial(ctx, e) for e in exponent_vectors(ctx.n, 2)]
    NF2 = np.array([T.normal_form(m) for m in mons]) % p
    basis = []
    cur = np.zeros((0, NF2.shape[1]), dtype=np.int64)
    for k in range(len(mons)):
        test = np.vstack([cur, NF2[k]])
        if linalg.rank(test, p, test.shape[1]) > cur.shape[0]:
            cur, basis = test, basis + [k]
    Mx = [np.array([T.normal_form(mons[k] * xi) for k in basis]) % p for xi in x]
    dim2, dim3 = len(basis), A.hf(3)
    for coeffs in itertools.product(range(p), repeat=dim2):
        c = np.array(coeffs, dtype=np.int64)
        nz = np.flatnonzero(c)
        if not nz.size or c[nz[0]] != 1:
            continue
        G = np.array([(c @ M) % p for M in Mx])
        if linalg.rank(G, p, dim3) < ctx.n:
            continue
        F = linalg.nullspace(G, p)
        cond = np.concatenate([(M @ F.T % p).T for M in Mx]) % p
        yield coeffs, linalg.nullspace(cond, p).shape[0]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--quotients", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=200, help="random pairs for the n = 4 witness table")
    args = ap.parse_args()

    ctx = RingContext(5, args.p)
    for k in range(args.quotients):
        t0 = time.perf_counter()
        A = ArtinQuotient(ctx, random_regular_sequence(ctx, None, make_rng(trial_seed(args.seed, k)), cap=10_000))
        full = hits = 0
        for _, v in same_image_partners(A):
            full += 1
            hits += v > 1
        print(json.dumps({"n": 5, "p": args.p, "quotient": k, "full_rank_g": full, "with_partner": hits,
                          "seconds": round(time.perf_counter() - t0, 2)}))

    ctx4 = RingContext(4, 101)
    counts = {"witness": 0, "no_witness": 0}
    for k in range(args.pairs):
        rng = make_rng(trial_seed(args.seed + 1, k))
        A = ArtinQuotient(ctx4, random_regular_sequence(ctx4, None, rng))
        g, h = random_form(ctx4, 2, rng), random_form(ctx4, 2, rng)
        if min(linalg.rank(A.mult_matrix(f, 1), 101, 4) for f in (g, h)) < 4:
            continue
        r = pencil_report(A, g, h)
        counts["witness" if r.has_witness else "no_witness"] += 1
    print(json.dumps({"n": 4, "p": 101, **counts}))


if __name__ == "__main__":
    main()
