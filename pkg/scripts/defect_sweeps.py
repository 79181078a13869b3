"""Seeded defect sweeps with JSONL logs.

Runs the defect-2 bound at n = 5, 6, 7 and the defect-3 checks at n = 5,
writing one log per sweep into --out-dir and printing the summaries.

    python3 scripts/defect_sweeps.py --trials 1000 --out-dir runs/
"""

import argparse
import json
from pathlib import Path

from egh.harness import SearchConfig, run_search

SWEEPS = [
    ("defect2_n5", dict(n=5, defect=2, checks=("defect2_bound", "four_term_identity", "intersection_bound"))),
    ("defect2_n6", dict(n=6, defect=2, checks=("defect2_bound", "four_term_identity"))),
    ("defect2_n7", dict(n=7, defect=2, checks=("defect2_bound",))),
    ("defect3_n5", dict(n=5, defect=3, checks=("egh_d(2)", "colon_linear", "duality"))),
    ("defect5_10_n5", dict(n=5, defect=(5, 10), checks=("lpp_comparison", "egh_full"))),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out-dir", default="runs")
    ap.add_argument("--only", help="comma-separated sweep names")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    wanted = set(args.only.split(",")) if args.only else None
    for name, kw in SWEEPS:
        if wanted and name not in wanted:
            continue
        cfg = SearchConfig(trials=args.trials, seed=args.seed, out=str(out / f"{name}.jsonl"), **kw)
        summary = run_search(cfg).to_json()
        print(name, json.dumps({k: summary[k] for k in ("trials", "failures", "ranges")}))


if __name__ == "__main__":
    main()
