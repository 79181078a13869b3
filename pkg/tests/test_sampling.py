import numpy as np
import pytest

from egh.algebra import RingContext
from egh.errors import CapacityError, GenerationFailure, InputError
from egh.sampling import (make_rng, random_defect_instance, random_form, random_four_quadrics, random_mixed_instance,
                          random_regular_sequence, trial_seed)
from egh.verify import defect, is_regular_sequence


def test_random_form_is_reproducible(ring5):
    # fixed by PCG64 seeded through SeedSequence([42, 0])
    v = random_form(ring5, 2, make_rng(trial_seed(42, 0))).to_vector()
    assert v.tolist() == [92, 56, 67, 54, 15, 23, 76, 78, 88, 51, 6, 53, 31, 96, 6]
    a = random_form(ring5, 3, make_rng(5))
    b = random_form(ring5, 3, make_rng(5))
    assert a == b


def test_random_forms_are_nonzero():
    ctx = RingContext(1, 2)
    rng = make_rng(0)
    assert all(not random_form(ctx, 1, rng).is_zero() for _ in range(200))
    with pytest.raises(InputError):
        random_form(ctx, 0, rng)


def test_regular_sequences_validate(ring5):
    stats = {}
    for seed in range(10):
        fs = random_regular_sequence(ring5, None, make_rng(seed), stats=stats)
        assert is_regular_sequence(ring5, fs)
    assert stats["rejections"] >= 0


def test_small_field_needs_more_draws_but_terminates():
    ctx = RingContext(5, 2)
    stats = {}
    for seed in range(5):
        fs = random_regular_sequence(ctx, None, make_rng(seed), stats=stats)
        assert is_regular_sequence(ctx, fs)
    assert stats["rejections"] > 0


def test_zero_cap_gives_up(ring5):
    with pytest.raises(GenerationFailure):
        random_regular_sequence(ring5, None, make_rng(0), cap=0)


def test_mixed_degree_sequences():
    ctx = RingContext(3, 101)
    fs = random_regular_sequence(ctx, (2, 3, 3), make_rng(1))
    assert sorted(f.degree for f in fs) == [2, 3, 3]
    with pytest.raises(InputError):
        random_regular_sequence(ctx, (2, 3), make_rng(1))


def test_defect_instances(ring5):
    assert random_defect_instance(ring5, None, 0, make_rng(0)).hilbert() == (1, 5, 10, 10, 5, 1, 0)
    inst = random_defect_instance(ring5, None, 2, make_rng(1))
    assert defect(inst) == 2
    full = random_defect_instance(ring5, None, 10, make_rng(2))
    assert full.hilbert() == (1, 5, 0, 0, 0, 0, 0)
    with pytest.raises(CapacityError):
        random_defect_instance(ring5, None, 11, make_rng(3))


def test_mixed_instances_respect_ranges(ring5):
    sizes, degrees = set(), set()
    for seed in range(60):
        inst = random_mixed_instance(ring5, make_rng(seed), max_extras=10)
        assert defect(inst) == len(inst.extras) <= 10
        assert sum(g.degree == 2 for g in inst.extras) <= 10
        sizes.add(len(inst.extras))
        degrees.update(g.degree for g in inst.extras)
    assert degrees == {2, 3, 4} and len(sizes) > 5


def test_four_quadrics_avoid_the_free_variable():
    fs = random_four_quadrics(101, make_rng(0), [0, 1, 2, 3])
    assert len(fs) == 4
    assert all(m.exponents[4] == 0 for f in fs for m in f.terms)


def test_trial_seeds_do_not_depend_on_order():
    a = [trial_seed(9, k) for k in range(5)]
    b = [trial_seed(9, k) for k in reversed(range(5))][::-1]
    assert a == b and all(0 <= s < 2**64 for s in a)
    assert not np.array_equal(make_rng(a[0]).integers(0, 100, 8), make_rng(a[1]).integers(0, 100, 8))
