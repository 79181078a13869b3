"""Run the five-variable checkpoint battery for several seeds.

Failures are written as ideal files into --out-dir so that
``egh hilbert --ideal FILE`` replays them.

    python3 scripts/run_checkpoints.py --seeds 0,1,2 --trials 100
"""

import argparse
import json
from pathlib import Path

from egh.checkpoints import run_checkpoints


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", default="0")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--out-dir", default="checkpoint_failures")
    args = ap.parse_args()
    bad = 0
    for seed in (int(s) for s in args.seeds.split(",")):
        for r in run_checkpoints(seed, args.trials):
            print(f"seed={seed} {r.line()}")
            for k, f in enumerate(r.failures):
                out = Path(args.out_dir)
                out.mkdir(parents=True, exist_ok=True)
                (out / f"{r.name}_seed{seed}_{k}.json").write_text(json.dumps(f["ideal"], indent=2) + "\n")
                bad += 1
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
