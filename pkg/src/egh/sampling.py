"""Seeded random forms, regular sequences and ideal instances.

Generators are numpy ``Generator(PCG64)`` streams.  Trial k of a run with
master seed S uses the stream seeded by ``SeedSequence([S, k])``, so any
single trial can be replayed on its own.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .algebra import Form, RingContext
from .errors import CapacityError, GenerationFailure, InputError
from .graded import ArtinQuotient, ideal_piece
from .lpp import DegreeVector
from .verify import IdealInstance

GENERATOR_VERSION = "numpy-pcg64/seedsequence-v2"
DEFAULT_CAP = 1000


def trial_seed(master: int, index: int) -> int:
    """64-bit seed of trial ``index`` under ``master``."""
    return int(np.random.SeedSequence([int(master), int(index)]).generate_state(1, np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def random_form(ctx: RingContext, d: int, rng: np.random.Generator) -> Form:
    """Uniform coefficients on every degree-d monomial, redrawn if all are zero."""
    if d < 1:
        raise InputError("random forms need degree at least 1")
    while True:
        v = rng.integers(0, ctx.p, size=ctx.dim(d))
        if v.any():
            return Form.from_vector(ctx, d, v)


def _degrees(ctx: RingContext, a) -> tuple[int, ...]:
    if a is None:
        return (2,) * ctx.n
    a = a.a if isinstance(a, DegreeVector) else tuple(int(x) for x in a)
    if len(a) != ctx.n:
        raise InputError(f"{len(a)} degrees for {ctx.n} variables")
    return DegreeVector(a).a


def random_quotient(ctx: RingContext, a, rng: np.random.Generator, cap: int = DEFAULT_CAP,
                    stats: dict | None = None) -> ArtinQuotient:
    """R/c for a rejection-sampled regular sequence c with degrees a."""
    a = _degrees(ctx, a)
    for attempt in range(cap):
        forms = [random_form(ctx, d, rng) for d in a]
        A = ArtinQuotient(ctx, forms, validate=False)
        if A.is_complete_intersection():
            if stats is not None:
                stats["rejections"] = stats.get("rejections", 0) + attempt
            return A
    raise GenerationFailure(f"no regular sequence with degrees {a} in {cap} attempts")


def random_regular_sequence(ctx: RingContext, a, rng: np.random.Generator, cap: int = DEFAULT_CAP,
                            stats: dict | None = None) -> list[Form]:
    """Rejection-sample n forms with degrees a until they form a regular sequence.

    The number of rejected draws is added to ``stats["rejections"]``.
    """
    return list(random_quotient(ctx, a, rng, cap, stats).ci_generators)


def _independent_extras(ctx: RingContext, fixed: Sequence[Form], degrees: Sequence[int],
                        rng: np.random.Generator, cap: int, stats: dict | None) -> list[Form]:
    # draw extras in increasing degree, each outside the ideal generated so far,
    # so the generating set stays minimal
    out: list[Form] = []
    rejected = 0
    for d in sorted(degrees):
        piece = ideal_piece(list(fixed) + out, d, ctx)
        if piece.is_full:
            raise CapacityError(f"no room for another minimal generator of degree {d}")
        for _ in range(cap):
            g = random_form(ctx, d, rng)
            if not piece.contains(g):
                out.append(g)
                break
            rejected += 1
        else:
            raise GenerationFailure(f"no degree-{d} form outside the ideal in {cap} attempts")
    if stats is not None:
        stats["extra_rejections"] = stats.get("extra_rejections", 0) + rejected
    return out


def random_defect_instance(ctx: RingContext, a, delta: int, rng: np.random.Generator, cap: int = DEFAULT_CAP,
                           stats: dict | None = None) -> IdealInstance:
    """Regular sequence plus delta forms of degree a_1, independent modulo it in that degree."""
    a = _degrees(ctx, a)
    room = ctx.dim(a[0]) - sum(1 for d in a if d == a[0])
    if not 0 <= delta <= room:
        raise CapacityError(f"defect {delta} outside [0, {room}]")
    A = random_quotient(ctx, a, rng, cap, stats)
    extras = _independent_extras(ctx, A.ci_generators, [a[0]] * delta, rng, cap, stats)
    return IdealInstance(ctx, A.ci_generators, extras, validate=False, quotient=A)


def random_mixed_instance(ctx: RingContext, rng: np.random.Generator, max_extras: int = 10,
                          degree_range: tuple[int, int] = (2, 4), cap: int = DEFAULT_CAP,
                          stats: dict | None = None) -> IdealInstance:
    """Quadric regular sequence plus up to max_extras minimal extras with degrees in degree_range.

    The number of extras k is uniform in [0, max_extras].  Extras are drawn
    in increasing degree; each picks its degree uniformly among those not
    below the previous one where the ideal still has room, and is drawn
    outside the ideal generated so far.  If every remaining degree is full
    the rest are dropped (counted in ``stats["dropped_extras"]``).
    """
    A = random_quotient(ctx, None, rng, cap, stats)
    k = int(rng.integers(0, max_extras + 1))
    lo, hi = degree_range
    out: list[Form] = []
    current = lo
    rejected = dropped = 0
    while len(out) < k:
        pieces = {d: ideal_piece(list(A.ci_generators) + out, d, ctx) for d in range(current, hi + 1)}
        open_degrees = [d for d, B in pieces.items() if not B.is_full]
        if not open_degrees:
            dropped = k - len(out)
            break
        current = open_degrees[int(rng.integers(len(open_degrees)))]
        for _ in range(cap):
            g = random_form(ctx, current, rng)
            if not pieces[current].contains(g):
                out.append(g)
                break
            rejected += 1
        else:
            raise GenerationFailure(f"no degree-{current} form outside the ideal in {cap} attempts")
    if stats is not None:
        stats["extra_rejections"] = stats.get("extra_rejections", 0) + rejected
        stats["dropped_extras"] = stats.get("dropped_extras", 0) + dropped
    return IdealInstance(ctx, A.ci_generators, out, validate=False, quotient=A)


def random_four_quadrics(p: int, rng: np.random.Generator, positions: Sequence[int], cap: int = DEFAULT_CAP,
                         stats: dict | None = None) -> list[Form]:
    """A regular sequence of four quadrics in four of the five variables."""
    small = RingContext(4, p)
    big = RingContext(5, p)
    return [f.embed(big, positions) for f in random_regular_sequence(small, None, rng, cap, stats)]
