"""Lex segments, lex-plus-powers ideals and Macaulay's growth bound.

Everything here is combinatorial (divisibility tests on exponent vectors) so
that it can serve as an independent check on the linear-algebra routes in
:mod:`egh.graded`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import Form, Monomial, RingContext, exponent_vectors
from .errors import CapacityError, InputError, NoLppIdealError
from .graded import OSequence, complete_intersection_hf


@dataclass(frozen=True)
class DegreeVector:
    """Degrees ``2 <= a_1 <= ... <= a_n`` of a regular sequence."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if not a:
            raise InputError("empty degree vector")
        if any(x < 2 for x in a):
            raise InputError(f"degrees must be at least 2: {a}")
        if any(x > y for x, y in zip(a, a[1:])):
            raise InputError(f"degrees must be non-decreasing: {a}")
        object.__setattr__(self, "a", a)

    @classmethod
    def quadrics(cls, n: int) -> "DegreeVector":
        return cls((2,) * n)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def socle_degree(self) -> int:
        return sum(x - 1 for x in self.a)

    def ci_hilbert(self) -> OSequence:
        return complete_intersection_hf(self.a)


def _in_powers(e: Sequence[int], a: Sequence[int]) -> bool:
    return any(x >= y for x, y in zip(e, a))


def _divides(g: Sequence[int], e: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(g, e))


@dataclass(frozen=True)
class LppIdeal:
    """``(x_1^a_1, ..., x_n^a_n) + (lex_gens)``.

    ``lex_gens`` are minimal: none lies in the ideal generated by the powers
    and the other generators.
    """

    ctx: RingContext
    a: DegreeVector
    lex_gens: tuple[Monomial, ...] = ()

    def __post_init__(self):
        if self.a.n != self.ctx.n:
            raise InputError(f"degree vector of length {self.a.n} in a ring with {self.ctx.n} variables")

    def contains(self, m: Monomial | Sequence[int]) -> bool:
        e = m.exponents if isinstance(m, Monomial) else tuple(m)
        if _in_powers(e, self.a.a):
            return True
        return any(_divides(g.exponents, e) for g in self.lex_gens)

    def piece(self, d: int) -> list[Monomial]:
        """Monomials of degree d in the ideal, descending lex."""
        return [Monomial(e) for e in exponent_vectors(self.ctx.n, d) if self.contains(e)]

    def standard_monomials(self, d: int) -> list[Monomial]:
        return [Monomial(e) for e in exponent_vectors(self.ctx.n, d) if not self.contains(e)]

    def piece_dim(self, d: int) -> int:
        return lpp_piece_dim(self, d)

    def hilbert(self, D: int) -> OSequence:
        return tuple(self.ctx.dim(d) - self.piece_dim(d) for d in range(D + 1))

    def generators(self) -> list[Form]:
        """Pure powers followed by the lex generators, as forms."""
        gens = []
        for i, ai in enumerate(self.a.a):
            e = [0] * self.ctx.n
            e[i] = ai
            gens.append(Form.monomial(self.ctx, e))
        gens.extend(Form.monomial(self.ctx, g.exponents) for g in self.lex_gens)
        return gens

    def with_generators(self, extra: Sequence[Monomial]) -> "LppIdeal":
        return LppIdeal(self.ctx, self.a, self.lex_gens + tuple(extra))

    def lex_gens_by_degree(self) -> dict[int, list[Monomial]]:
        out: dict[int, list[Monomial]] = {}
        for g in self.lex_gens:
            out.setdefault(g.degree, []).append(g)
        return out


def lex_segment(ctx: RingContext, d: int, k: int, exclude: LppIdeal | None = None) -> list[Monomial]:
    """The k lex-greatest degree-d monomials outside ``exclude``."""
    if k < 0:
        raise CapacityError("negative segment length")
    out = []
    if k == 0:
        return out
    for e in exponent_vectors(ctx.n, d):
        if exclude is not None and exclude.contains(e):
            continue
        out.append(Monomial(e))
        if len(out) == k:
            return out
    raise CapacityError(f"only {len(out)} degree-{d} monomials available, {k} requested")


def lpp_defect(ctx: RingContext, a: DegreeVector, d: int, delta: int) -> LppIdeal:
    """Powers plus the delta greatest degree-d monomials outside them."""
    base = LppIdeal(ctx, a)
    return base.with_generators(lex_segment(ctx, d, delta, base))


def lpp_piece_dim(L: LppIdeal, d: int) -> int:
    """Number of degree-d monomials in L, by enumeration."""
    return sum(1 for e in exponent_vectors(L.ctx.n, d) if L.contains(e))


def binomial_representation(h: int, d: int) -> list[tuple[int, int]]:
    """The d-th Macaulay representation ``h = sum C(b_i, i)`` as ``[(b_d, d), ...]``.

    ``b_d > b_{d-1} > ... > b_j >= j >= 1``, found greedily from the top.
    """
    if h < 0 or d < 1:
        raise ValueError("need h >= 0 and d >= 1")
    rep = []
    i = d
    while h > 0 and i >= 1:
        b = i
        while comb(b + 1, i) <= h:
            b += 1
        rep.append((b, i))
        h -= comb(b, i)
        i -= 1
    return rep


def macaulay_bound(h: int, d: int) -> int:
    """Macaulay's upper bound ``h^<d>`` on Hf(d+1) given Hf(d) = h."""
    return sum(comb(b + 1, i + 1) for b, i in binomial_representation(h, d))


def lpp_match_full(target: Sequence[int], ctx: RingContext, a: DegreeVector) -> LppIdeal:
    """Greedy LPP ideal with Hilbert function ``target``.

    Works up degree by degree: at each degree the powers and the lower-degree
    generators fix which monomials are already in the ideal; the shortfall is
    made up with the lex-greatest remaining monomials.  Values past the end
    of ``target`` are taken to be 0 through the socle degree plus one.
    Raises :class:`NoLppIdealError` at the first degree where the ideal
    already has too few standard monomials.
    """
    if a.n != ctx.n:
        raise InputError("degree vector does not match the ring")
    target = list(target)
    if not target or target[0] != 1:
        raise InputError("target must start with 1")
    top = max(len(target) - 1, a.socle_degree + 1)
    target += [0] * (top + 1 - len(target))
    L = LppIdeal(ctx, a)
    for d in range(1, top + 1):
        standard = [e for e in exponent_vectors(ctx.n, d) if not L.contains(e)]
        if len(standard) < target[d]:
            raise NoLppIdealError(d, len(standard), target[d])
        surplus = len(standard) - target[d]
        if surplus:
            L = L.with_generators([Monomial(e) for e in standard[:surplus]])
    return L
