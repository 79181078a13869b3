"""Seeded trial runs with a JSONL log.

The log starts with a header line (generator version and config), then one
line per trial, then a summary line.  Wall-clock times live under the
``timing`` key of each line; everything else is a deterministic function of
the config.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from . import __version__
from .algebra import RingContext
from .errors import InputError
from .lpp import DegreeVector
from .sampling import DEFAULT_CAP, GENERATOR_VERSION, make_rng, random_defect_instance, random_mixed_instance, trial_seed
from .serialize import instance_from_dict, instance_to_dict
from .verify import (IdealInstance, colon_linear_bound_check, ci_intersection_check, defect2_bound_check, duality_check,
                     egh_d_check, egh_full_check, intersection_bound_check, four_term_identity, lpp_comparison_check)


@dataclass
class CheckOutcome:
    holds: bool | None
    values: dict


def _defect2_bound(inst):
    r = defect2_bound_check(inst)
    return CheckOutcome(r.holds, {"dim_I3": r.measured, "bound": r.bound})


def _ci_intersection(inst):
    # every extra of degree d against the regular sequence, plus dim J_3 for a single extra quadric
    vals, ok = {}, True
    for k, g in enumerate(inst.extras):
        r = ci_intersection_check(inst.ci, g)
        vals[f"cap_{k + 1}"] = r.measured
        ok = ok and r.holds
    if len(inst.extras) == 1 and inst.is_quadratic():
        n = inst.n
        vals["dim_J3"] = inst.piece_dim(3)
        ok = ok and vals["dim_J3"] >= n * n + n - 2
    return CheckOutcome(ok, vals)


def _four_term(inst):
    r = four_term_identity(inst)
    return CheckOutcome(r.holds, {"dim_I3": r.dim_I3, "dim_ci3": r.dim_ci3, "cap_g": r.cap_g, "cap_h": r.cap_h})


def _egh_d(d):
    def run(inst):
        r = egh_d_check(inst, d)
        return CheckOutcome(r.holds, r.values())
    return run


def _egh_full(inst):
    r = egh_full_check(inst)
    vals = {"target": list(r.target)}
    if r.lpp is not None:
        vals["lpp_gens"] = [m.to_string(inst.ctx.var_names) for m in r.lpp.lex_gens]
    if r.failure:
        vals["failure"] = r.failure
    return CheckOutcome(r.holds, vals)


def _duality(inst):
    rows = [duality_check(inst, d) for d in range(inst.socle_degree + 1)]
    return CheckOutcome(all(r.holds for r in rows), {
        "hf_I": [r.hf_I for r in rows], "hf_ci": [r.hf_ci for r in rows], "hf_colon": [r.hf_colon for r in rows]})


def _colon_linear(inst):
    r = colon_linear_bound_check(inst)
    return CheckOutcome(r.holds, dict(r.values))


def _intersection_bound(inst):
    r = intersection_bound_check(inst)
    return CheckOutcome(r.holds, {"measured": r.measured, **r.values})


def _lpp_comparison(inst):
    r = lpp_comparison_check(inst)
    return CheckOutcome(r.holds, {"hf3": r.measured, "lpp_hf3": r.bound})


CHECKS: dict[str, Callable] = {
    "defect2_bound": _defect2_bound,
    "ci_intersection": _ci_intersection,
    "four_term_identity": _four_term,
    "egh_full": _egh_full,
    "duality": _duality,
    "colon_linear": _colon_linear,
    "intersection_bound": _intersection_bound,
    "lpp_comparison": _lpp_comparison,
}

_EGH_D = re.compile(r"egh_d\((\d+)\)\Z")


def resolve_check(name: str) -> Callable:
    m = _EGH_D.match(name)
    if m:
        return _egh_d(int(m.group(1)))
    try:
        return CHECKS[name]
    except KeyError:
        raise InputError(f"unknown check {name!r}; known: {', '.join(sorted(CHECKS))}, egh_d(k)") from None


@dataclass
class SearchConfig:
    n: int = 5
    p: int = 101
    a: tuple[int, ...] | None = None
    defect: int | tuple[int, int] = 2
    trials: int = 100
    seed: int = 0
    checks: tuple[str, ...] = ("defect2_bound",)
    out: str | None = None
    mode: str = "defect"  # or "mixed": quadric regular sequence plus extras of degrees 2..4
    max_extras: int = 10
    cap: int = DEFAULT_CAP
    jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise InputError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must fit in 64 bits")
        if self.mode not in ("defect", "mixed"):
            raise InputError(f"unknown mode {self.mode!r}")
        if self.a is not None:
            self.a = tuple(int(x) for x in self.a)
        if isinstance(self.defect, (list, tuple)):
            self.defect = (int(self.defect[0]), int(self.defect[1]))
        ctx = self.ring()
        a = self.degrees()
        room = ctx.dim(a.a[0]) - a.a.count(a.a[0])
        hi = self.defect[1] if isinstance(self.defect, tuple) else self.defect
        lo = self.defect[0] if isinstance(self.defect, tuple) else self.defect
        if self.mode == "defect" and not 0 <= lo <= hi <= room:
            raise InputError(f"defect must lie in [0, {room}]")
        for c in self.checks:
            resolve_check(c)

    def ring(self) -> RingContext:
        return RingContext(self.n, self.p)

    def degrees(self) -> DegreeVector:
        return DegreeVector(self.a) if self.a is not None else DegreeVector.quadrics(self.n)

    def header(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        return d


@dataclass
class TrialRecord:
    index: int
    seed: int
    ideal: dict
    defect: int
    outcomes: dict
    values: dict
    failed: bool
    timing: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"type": "trial", **asdict(self)}

    def deterministic(self) -> dict:
        d = asdict(self)
        d.pop("timing")
        return d


def _draw(cfg: SearchConfig, seed: int) -> IdealInstance:
    rng = make_rng(seed)
    ctx = cfg.ring()
    if cfg.mode == "mixed":
        return random_mixed_instance(ctx, rng, cfg.max_extras, cap=cfg.cap)
    delta = cfg.defect
    if isinstance(delta, tuple):
        delta = int(rng.integers(delta[0], delta[1] + 1))
    return random_defect_instance(ctx, cfg.degrees(), delta, rng, cfg.cap)


def evaluate(inst: IdealInstance, checks) -> tuple[dict, dict]:
    outcomes, values = {}, {}
    for name in checks:
        out = resolve_check(name)(inst)
        outcomes[name] = out.holds
        values[name] = out.values
    return outcomes, values


def run_trial(cfg: SearchConfig, index: int) -> TrialRecord:
    t0 = time.perf_counter()
    seed = trial_seed(cfg.seed, index)
    inst = _draw(cfg, seed)
    outcomes, values = evaluate(inst, cfg.checks)
    failed = any(v is False for v in outcomes.values())
    return TrialRecord(index, seed, instance_to_dict(inst), len(inst.extras), outcomes, values, failed,
                       {"wall_s": round(time.perf_counter() - t0, 6)})


def recheck(record: dict, checks=None) -> tuple[dict, dict]:
    """Reload the logged ideal and rerun its checks."""
    inst = instance_from_dict(record["ideal"])
    return evaluate(inst, checks if checks is not None else list(record["outcomes"]))


def _numbers(prefix: str, obj, out: dict):
    if isinstance(obj, bool):
        return
    if isinstance(obj, int):
        out.setdefault(prefix, []).append(obj)
    elif isinstance(obj, dict):
        for k, v in obj.items():
            _numbers(f"{prefix}.{k}" if prefix else str(k), v, out)


@dataclass
class SearchSummary:
    trials: int
    failures: int
    ranges: dict
    failing_indices: list
    runtime_s: float

    def to_json(self) -> dict:
        d = asdict(self)
        runtime = d.pop("runtime_s")
        return {"type": "summary", **d, "timing": {"runtime_s": round(runtime, 3)}}


def _trial_task(args):
    cfg, index = args
    return run_trial(cfg, index)


def iter_trials(cfg: SearchConfig):
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            yield from ex.map(_trial_task, [(cfg, k) for k in range(cfg.trials)], chunksize=8)
    else:
        for k in range(cfg.trials):
            yield run_trial(cfg, k)


def run_search(cfg: SearchConfig, on_record: Callable | None = None) -> SearchSummary:
    """Run every trial, append to ``cfg.out`` when set, and summarize."""
    t0 = time.perf_counter()
    nums: dict = {}
    failing = []
    fh = None
    if cfg.out:
        path = Path(cfg.out)
        try:
            fh = path.open("w")
        except OSError as exc:
            raise OSError(f"{path}: {exc.strerror}") from exc
        fh.write(json.dumps({"type": "header", "generator": GENERATOR_VERSION, "version": __version__,
                             "config": cfg.header()}, sort_keys=True) + "\n")
    n = 0
    try:
        for rec in iter_trials(cfg):
            n += 1
            if rec.failed:
                failing.append(rec.index)
            _numbers("", rec.values, nums)
            if fh:
                fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
            if on_record:
                on_record(rec)
        ranges = {k: [min(v), max(v)] for k, v in sorted(nums.items())}
        summary = SearchSummary(n, len(failing), ranges, failing, time.perf_counter() - t0)
        if fh:
            fh.write(json.dumps(summary.to_json(), sort_keys=True) + "\n")
    finally:
        if fh:
            fh.close()
    return summary


def read_log(path: str | Path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def strip_timing(lines: list[dict]) -> list[dict]:
    return [{k: v for k, v in line.items() if k != "timing"} for line in lines]
