"""A fixed battery of exact checks on the five-variable quadric families.

Each item draws its own seeded instances and records every failure with the
instance in ideal-file form, so a failure can be replayed directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import RingContext
from .errors import InputError
from .sampling import make_rng, random_defect_instance, random_four_quadrics, trial_seed
from .serialize import instance_to_dict
from .verify import case1_instance, case2_colon_dim, case2_instance, lpp_comparison_check, defect2_bound_check

P = 101


@dataclass
class CheckpointResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    observed: dict = field(default_factory=dict)
    rejected_draws: int = 0

    @property
    def passed(self) -> bool:
        return self.trials > 0 and not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = " ".join(f"{k}={v}" for k, v in self.observed.items())
        return f"{status} {self.name}: {self.trials} trials, {len(self.failures)} failures {extra}".rstrip()


def _admissible(build, fs, c):
    try:
        return build(RingContext(5, P), fs, c)
    except InputError:
        return None


def _case_trials(name, build, positions, c_of, seed, trials) -> CheckpointResult:
    res = CheckpointResult(name)
    values = set()
    k = 0
    while res.trials < trials:
        rng = make_rng(trial_seed(seed, k))
        k += 1
        fs = random_four_quadrics(P, rng, positions)
        inst = _admissible(build, fs, c_of(rng))
        if inst is None:
            res.rejected_draws += 1
            continue
        res.trials += 1
        hf3 = inst.hf(3)
        values.add(hf3)
        if hf3 != 4:
            res.failures.append({"hf3": hf3, "ideal": instance_to_dict(inst)})
    res.observed["hf3"] = sorted(values)
    return res


def colon_battery(seed: int, trials: int = 100) -> CheckpointResult:
    """(f_1..f_3, f_4 + x_4x_5, x_5^2) : (x_1x_5, x_2x_5, x_3x_5) has dimension 9 in degree 2."""
    res = CheckpointResult("colon_degree2_dim9")
    dims = set()
    k = 0
    while res.trials < trials:
        rng = make_rng(trial_seed(seed, k))
        k += 1
        inst = _admissible(case2_instance, random_four_quadrics(P, rng, [0, 1, 2, 3]), 1)
        if inst is None:
            res.rejected_draws += 1
            continue
        res.trials += 1
        dim2 = case2_colon_dim(inst, 2)
        dims.add(dim2)
        if dim2 != 9 or inst.ctx.dim(2) - dim2 != 6:
            res.failures.append({"dim": dim2, "ideal": instance_to_dict(inst)})
    res.observed["dim"] = sorted(dims)
    return res


def case1_battery(seed: int, trials: int = 100) -> CheckpointResult:
    """Case with x_1x_5 in the regular sequence and a random nonzero c: Hf(3) = 4."""
    return _case_trials("case_x1x5_hf3", case1_instance, [1, 2, 3, 4],
                        lambda rng: int(rng.integers(1, P)), seed, trials)


def case2_battery(seed: int, trials: int = 100, random_c: bool = False) -> CheckpointResult:
    """Case with x_5^2 in the regular sequence, c = 1 or uniform in GF(p): Hf(3) = 4."""
    name = "case_x5x5_hf3" + ("_random_c" if random_c else "")
    c_of = (lambda rng: int(rng.integers(0, P))) if random_c else (lambda rng: 1)
    return _case_trials(name, case2_instance, [0, 1, 2, 3], c_of, seed, trials)


def high_defect_battery(seed: int, trials_per_defect: int = 20) -> CheckpointResult:
    """Defects 5..10: Hf_{R/I}(3) is at most that of the matching lex-plus-powers ideal."""
    res = CheckpointResult("high_defect_hf3")
    ctx = RingContext(5, P)
    worst = {}
    for delta in range(5, 11):
        for k in range(trials_per_defect):
            inst = random_defect_instance(ctx, None, delta, make_rng(trial_seed(seed + delta, k)))
            rep = lpp_comparison_check(inst)
            res.trials += 1
            worst[delta] = max(worst.get(delta, 0), rep.measured)
            if not rep.holds:
                res.failures.append({"delta": delta, "hf3": rep.measured, "lpp_hf3": rep.bound,
                                     "ideal": instance_to_dict(inst)})
    res.observed["max_hf3"] = worst
    return res


def defect2_battery(seed: int, trials: int = 200) -> CheckpointResult:
    """Two extra quadrics: dim I_3 >= 30."""
    res = CheckpointResult("defect2_dim_I3")
    ctx = RingContext(5, P)
    low = None
    for k in range(trials):
        inst = random_defect_instance(ctx, None, 2, make_rng(trial_seed(seed, k)))
        rep = defect2_bound_check(inst)
        res.trials += 1
        low = rep.measured if low is None else min(low, rep.measured)
        if not rep.holds:
            res.failures.append({"dim_I3": rep.measured, "ideal": instance_to_dict(inst)})
    res.observed["min_dim_I3"] = low
    return res


def run_checkpoints(seed: int = 0, trials: int = 100) -> list[CheckpointResult]:
    return [
        colon_battery(seed, trials),
        case1_battery(seed, trials),
        case2_battery(seed, trials),
        case2_battery(seed, trials, random_c=True),
        high_defect_battery(seed, max(1, trials // 5)),
        defect2_battery(seed, 2 * trials),
    ]
