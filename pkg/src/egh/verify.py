"""Checks of EGH-type dimension statements on explicit ideals.

An :class:`IdealInstance` is a regular sequence ``c = (f_1..f_n)`` plus extra
generators.  Every check here returns measured dimensions together with the
verdict, so that a harness can log them.  Checks with a hypothesis that
might not hold on a given instance report ``holds=None`` rather than a
verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import Form, RingContext
from .errors import (ContextMismatchError, DegenerateInputError, DegreeMismatchError, InputError,
                     NoLppIdealError, NonMinimalGenerationError, UnsupportedShapeError)
from .graded import (ArtinQuotient, GradedBasis, OSequence, QuotientTower, complete_intersection_hf,
                     hilbert_function, ideal_piece, multiplication_matrix, span, subspace_dims)
from .lpp import DegreeVector, LppIdeal, lpp_defect, lpp_match_full


def is_regular_sequence(ctx: RingContext, forms: Sequence[Form], a: DegreeVector | Sequence[int] | None = None) -> bool:
    """True iff R/(forms) has the complete-intersection Hilbert function.

    Checked through the socle degree plus one, which is where a
    non-Artinian quotient first shows up.
    """
    if len(forms) != ctx.n:
        raise InputError(f"a regular sequence in {ctx.n} variables needs {ctx.n} forms, got {len(forms)}")
    degrees = tuple(f.degree for f in forms)
    if a is not None:
        a = a.a if isinstance(a, DegreeVector) else tuple(a)
        if tuple(sorted(degrees)) != tuple(sorted(a)):
            raise InputError(f"form degrees {degrees} do not match {a}")
    if any(f.is_zero() or f.degree < 1 for f in forms):
        return False
    s = sum(d - 1 for d in degrees)
    return QuotientTower(ctx, forms).hilbert(s + 1) == complete_intersection_hf(degrees)


def _independent_by_degree(forms: Sequence[Form], ctx: RingContext) -> bool:
    by_degree: dict[int, list[Form]] = {}
    for f in forms:
        by_degree.setdefault(f.degree, []).append(f)
    return all(span(fs, d, ctx).dim == len(fs) for d, fs in by_degree.items())


class IdealInstance:
    """``I = c + (extras)`` with ``c`` a regular sequence.

    The regular sequence is stored sorted by degree.  Construction checks
    regularity and that the generators are linearly independent within each
    degree; ``validate=False`` skips both (used by samplers that have
    already checked them).  ``quotient`` reuses an already built R/c.
    """

    def __init__(self, ctx: RingContext, ci: Sequence[Form], extras: Sequence[Form] = (), validate: bool = True,
                 quotient: ArtinQuotient | None = None):
        for f in list(ci) + list(extras):
            if f.ctx != ctx:
                raise ContextMismatchError("generator over a different ring")
        if len(ci) != ctx.n:
            raise InputError(f"expected {ctx.n} forms in the regular sequence, got {len(ci)}")
        self.ctx = ctx
        self.ci = tuple(sorted(ci, key=lambda f: f.degree))
        self.extras = tuple(extras)
        self.a = DegreeVector(tuple(f.degree for f in self.ci))
        if any(g.is_zero() for g in self.extras):
            raise InputError("zero extra generator")
        if quotient is not None and tuple(quotient.ci_generators) != self.ci:
            raise InputError("prebuilt quotient does not match the regular sequence")
        self.quotient = quotient if quotient is not None else ArtinQuotient(ctx, self.ci, validate=validate)
        if validate and not _independent_by_degree(self.ci + self.extras, ctx):
            raise NonMinimalGenerationError("generators are linearly dependent in some degree")

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def socle_degree(self) -> int:
        return self.a.socle_degree

    @property
    def generators(self) -> tuple[Form, ...]:
        return self.ci + self.extras

    @cached_property
    def tower(self) -> QuotientTower:
        return QuotientTower(self.ctx, self.generators)

    def hilbert(self, D: int | None = None) -> OSequence:
        return self.tower.hilbert(self.socle_degree + 1 if D is None else D)

    def hf(self, d: int) -> int:
        return self.tower.dim(d)

    def piece_dim(self, d: int) -> int:
        """``dim I_d``."""
        return self.ctx.dim(d) - self.tower.dim(d)

    def is_quadratic(self) -> bool:
        return all(f.degree == 2 for f in self.generators)

    def __repr__(self) -> str:
        return f"IdealInstance(n={self.n}, p={self.ctx.p}, a={self.a.a}, extras={len(self.extras)})"


def defect(inst: IdealInstance) -> int:
    """Number of extra minimal generators.

    Every extra must be outside the ideal generated by the regular sequence
    and the other generators of degree at most its own; otherwise the
    generating set is not minimal.
    """
    gens = inst.generators
    for e in sorted({g.degree for g in inst.extras}):
        lower = [f for f in gens if f.degree < e]
        same = [f for f in gens if f.degree == e]
        base = ideal_piece(lower, e, inst.ctx).dim
        if ideal_piece(lower + same, e, inst.ctx).dim != base + len(same):
            raise NonMinimalGenerationError(f"generators of degree {e} are not minimal")
    return len(inst.extras)


def _require_quadratic(inst: IdealInstance, what: str) -> None:
    if not inst.is_quadratic():
        raise UnsupportedShapeError(f"{what} needs every generator to be a quadric")


def multiples_span(g: Form, k: int = 1) -> GradedBasis:
    """``g R_k`` as a graded basis."""
    return GradedBasis.from_rows(g.ctx, g.degree + k, multiplication_matrix(g, k))


# -- degree-local comparison with lex-plus-powers ideals ------------------------

@dataclass
class EghReport:
    degree: int
    dim_I: int
    dim_L: int
    dim_I_next: int
    dim_L_next: int
    holds: bool
    lpp: LppIdeal
    counterexample: dict | None = None

    def values(self) -> dict:
        return {"degree": self.degree, "dim_I": self.dim_I, "dim_L": self.dim_L,
                "dim_I_next": self.dim_I_next, "dim_L_next": self.dim_L_next}


def egh_d_check(inst: IdealInstance, d: int) -> EghReport:
    """Compare ``dim I_{d+1}`` with the lex-plus-powers ideal matching ``dim I_d``.

    L is the pure powers plus the greatest degree-d monomials outside them,
    as many as needed to make ``dim L_d = dim I_d``.
    """
    if any(f.degree > d for f in inst.generators):
        raise UnsupportedShapeError(f"generators of degree above {d}")
    dim_I = inst.piece_dim(d)
    powers = LppIdeal(inst.ctx, inst.a)
    k = dim_I - powers.piece_dim(d)
    if k < 0:
        raise InputError("ideal is smaller than the pure powers in its own degree")
    L = lpp_defect(inst.ctx, inst.a, d, k)
    dim_I_next = inst.piece_dim(d + 1)
    dim_L_next = L.piece_dim(d + 1)
    holds = dim_I_next >= dim_L_next
    rep = EghReport(d, dim_I, L.piece_dim(d), dim_I_next, dim_L_next, holds, L)
    if not holds:
        rep.counterexample = {"degree": d, "dim_I_next": dim_I_next, "dim_L_next": dim_L_next}
    return rep


@dataclass
class FullMatchReport:
    target: OSequence
    holds: bool
    lpp: LppIdeal | None = None
    lpp_hilbert: OSequence | None = None
    failure: dict | None = None


def egh_full_check(inst: IdealInstance) -> FullMatchReport:
    """Look for a lex-plus-powers ideal with the same Hilbert function as I.

    The match found by the greedy matcher is re-checked with the quotient
    tower on the monomial generators, independently of the enumeration the
    matcher uses.
    """
    s = inst.socle_degree
    target = inst.hilbert(s + 1)
    try:
        L = lpp_match_full(target, inst.ctx, inst.a)
    except NoLppIdealError as exc:
        return FullMatchReport(target, False, failure={
            "degree": exc.degree, "achievable": exc.achievable, "target": exc.target})
    got = hilbert_function(L.generators(), s + 1, inst.ctx)
    if got != target:
        return FullMatchReport(target, False, L, got, failure={"reason": "hilbert function mismatch"})
    return FullMatchReport(target, True, L, got)


# -- duality --------------------------------------------------------------------

@dataclass
class DualityReport:
    degree: int
    hf_I: int
    hf_ci: int
    hf_colon: int
    holds: bool


def duality_check(inst: IdealInstance, d: int) -> DualityReport:
    """``Hf_{R/I}(d) = Hf_{R/c}(d) - Hf_{R/(c:I)}(s-d)``."""
    s = inst.socle_degree
    if not 0 <= d <= s:
        raise InputError(f"degree {d} outside [0, {s}]")
    A = inst.quotient
    hf_I = inst.hf(d)
    hf_ci = A.hf(d)
    hf_colon = A.colon_hf(list(inst.extras), s - d)
    return DualityReport(d, hf_I, hf_ci, hf_colon, hf_I == hf_ci - hf_colon)


# -- intersections with g R_1 ----------------------------------------------------

@dataclass
class BoundReport:
    measured: int
    bound: int
    holds: bool | None
    values: dict = field(default_factory=dict)


def ci_intersection_check(ci: Sequence[Form], g: Form, d: int | None = None) -> BoundReport:
    """``dim (c_{d+1} & g R_1) <= d`` for quadrics c and a degree-d form g outside c."""
    if not ci:
        raise InputError("empty regular sequence")
    ctx = ci[0].ctx
    if any(f.degree != 2 for f in ci):
        raise UnsupportedShapeError("the regular sequence must consist of quadrics")
    d = g.degree if d is None else d
    if g.degree != d:
        raise UnsupportedShapeError(f"g has degree {g.degree}, expected {d}")
    if g.is_zero() or ideal_piece(ci, d, ctx).contains(g):
        raise DegenerateInputError("g lies in the ideal of the regular sequence")
    C = ideal_piece(ci, d + 1, ctx)
    G = multiples_span(g)
    dim_c, dim_g, dim_sum, dim_cap = subspace_dims(C, G)
    return BoundReport(dim_cap, d, dim_cap <= d,
                       {"dim_ci": dim_c, "dim_gR1": dim_g, "dim_J": dim_sum})


def intersection_bound_check(inst: IdealInstance) -> BoundReport:
    """``dim ((c + (g_1..g_{k-1}))_3 & g_k R_1) <= 3`` when some linear L kills g_1..g_{k-1} but not g_k.

    Without such an L the outcome is ``holds=None``.
    """
    _require_quadratic(inst, "the intersection bound")
    k = len(inst.extras)
    if k < 2:
        raise InputError("needs at least two extra generators")
    A = inst.quotient
    *head, last = inst.extras
    K = np.hstack([A.mult_matrix(g, 1) for g in head])
    ann = linalg.left_kernel(K, inst.ctx.p)
    hyp = ann.shape[0] > 0 and linalg.rank(linalg.matmul_mod(ann, A.mult_matrix(last, 1), inst.ctx.p), inst.ctx.p) > 0
    J = ideal_piece(list(inst.ci) + head, 3, inst.ctx)
    measured = subspace_dims(J, multiples_span(last))[3]
    return BoundReport(measured, 3, (measured <= 3) if hyp else None,
                       {"ann_dim": int(ann.shape[0]), "hypothesis": bool(hyp)})


@dataclass
class FourTermReport:
    dim_I3: int
    dim_ci3: int
    cap_g: int
    cap_h: int
    holds: bool


def four_term_identity(inst: IdealInstance) -> FourTermReport:
    """``dim I_3 = n^2 + 2n - dim(c_3 & gR_1) - dim(J_3 & hR_1)`` with ``J = c + (g)``."""
    _require_quadratic(inst, "the four-term identity")
    if len(inst.extras) != 2:
        raise InputError("needs exactly two extra generators")
    n, ctx = inst.n, inst.ctx
    g, h = inst.extras
    C3 = inst.quotient.ci_basis(3)
    cap_g = subspace_dims(C3, multiples_span(g))[3]
    cap_h = subspace_dims(ideal_piece(list(inst.ci) + [g], 3, ctx), multiples_span(h))[3]
    dim_I3 = inst.piece_dim(3)
    return FourTermReport(dim_I3, C3.dim, cap_g, cap_h, dim_I3 == n * n + 2 * n - cap_g - cap_h)


def defect2_bound_check(inst: IdealInstance) -> BoundReport:
    """``dim I_3 >= n^2 + 2n - 5`` for two extra quadrics."""
    _require_quadratic(inst, "the defect-two bound")
    if len(inst.extras) != 2:
        raise InputError("needs exactly two extra generators")
    n = inst.n
    dim_I3 = inst.piece_dim(3)
    bound = n * n + 2 * n - 5
    return BoundReport(dim_I3, bound, dim_I3 >= bound)


def colon_linear_bound_check(inst: IdealInstance) -> BoundReport:
    """``dim (c : T)_1 <= 1`` for every pair T of the three extras and for all three."""
    _require_quadratic(inst, "the linear colon bound")
    if len(inst.extras) != 3:
        raise InputError("needs exactly three extra generators")
    A = inst.quotient
    dims = {}
    for T in list(combinations(range(3), 2)) + [(0, 1, 2)]:
        dims["".join(str(i + 1) for i in T)] = A.colon_dim([inst.extras[i] for i in T], 1)
    worst = max(dims.values())
    return BoundReport(worst, 1, worst <= 1, dims)


def lpp_comparison_check(inst: IdealInstance, d: int = 3) -> BoundReport:
    """``Hf_{R/I}(d) <= Hf_{R/L}(d)`` with L the powers plus the degree-2 lex segment of the same size."""
    _require_quadratic(inst, "the degree-2 lex comparison")
    L = lpp_defect(inst.ctx, inst.a, 2, len(inst.extras))
    hf_L = inst.ctx.dim(d) - L.piece_dim(d)
    hf_I = inst.hf(d)
    return BoundReport(hf_I, hf_L, hf_I <= hf_L)


# -- pencils ----------------------------------------------------------------------

@dataclass
class PencilReport:
    members: list[tuple[str, int, int]]  # (label, dim g'A_1, dim Ann_{A_1} g')
    has_witness: bool
    witness: str | None
    same_image: bool
    same_annihilator: bool

    @property
    def verdict(self) -> str:
        return f"witness {self.witness}" if self.has_witness else "no GF(p)-rational witness"


def pencil_report(A: ArtinQuotient, g: Form, h: Form) -> PencilReport:
    """Image and annihilator dimensions on A_1 for every member of the pencil of g and h.

    Members are ``g + c*h`` for c in GF(p), labelled by c, and h, labelled
    ``inf``.  A witness is a member with a nonzero linear annihilator.
    """
    p = A.ctx.p
    if g.degree != h.degree:
        raise DegreeMismatchError("g and h have different degrees")
    nf = np.vstack([A.tower.normal_form(g), A.tower.normal_form(h)])
    if linalg.rank(nf, p, nf.shape[1]) < 2:
        raise DegenerateInputError("g and h are dependent modulo the regular sequence")
    h1 = A.hf(1)
    Mg, Mh = A.mult_matrix(g, 1), A.mult_matrix(h, 1)
    members = []
    witness = None
    for label, M in [(str(c), (Mg + c * Mh) % p) for c in range(p)] + [("inf", Mh)]:
        r = linalg.rank(M, p, M.shape[1])
        members.append((label, r, h1 - r))
        if witness is None and r < h1:
            witness = label
    rg, rh = linalg.rank(Mg, p, Mg.shape[1]), linalg.rank(Mh, p, Mh.shape[1])
    both = linalg.rank(np.vstack([Mg.T, Mh.T]), p, Mg.shape[0])
    same_image = rg == rh == both
    kg = linalg.left_kernel(Mg, p)
    kh = linalg.left_kernel(Mh, p)
    same_ann = kg.shape[0] == kh.shape[0] == linalg.rank(np.vstack([kg, kh]), p, h1)
    return PencilReport(members, witness is not None, witness, same_image, same_ann)


# -- explicit families ---------------------------------------------------------------

def case1_instance(ctx: RingContext, fs: Sequence[Form], c: int, validate: bool = True) -> IdealInstance:
    """``(f_1, f_2, f_3, f_4 + c x_1^2, x_1x_5) + (x_1x_2, x_1x_3, x_1x_4)``, f_i free of x_1."""
    _check_family(ctx, fs, free_of=0)
    x = [Form.variable(ctx, i) for i in range(5)]
    ci = [fs[0], fs[1], fs[2], fs[3] + (x[0] * x[0]) * c, x[0] * x[4]]
    return IdealInstance(ctx, ci, [x[0] * x[1], x[0] * x[2], x[0] * x[3]], validate=validate)


def case2_instance(ctx: RingContext, fs: Sequence[Form], c: int = 1, validate: bool = True) -> IdealInstance:
    """``(f_1, f_2, f_3, f_4 + c x_4x_5, x_5^2) + (x_1x_5, x_2x_5, x_3x_5)``, f_i free of x_5."""
    _check_family(ctx, fs, free_of=4)
    x = [Form.variable(ctx, i) for i in range(5)]
    ci = [fs[0], fs[1], fs[2], fs[3] + (x[3] * x[4]) * c, x[4] * x[4]]
    return IdealInstance(ctx, ci, [x[0] * x[4], x[1] * x[4], x[2] * x[4]], validate=validate)


def case2_colon_dim(inst: IdealInstance, d: int = 2) -> int:
    """``dim (c : (x_1x_5, x_2x_5, x_3x_5))_d`` for a :func:`case2_instance`."""
    return inst.quotient.colon_dim(list(inst.extras), d)


def _check_family(ctx: RingContext, fs: Sequence[Form], free_of: int) -> None:
    if ctx.n != 5:
        raise UnsupportedShapeError("the explicit families live in five variables")
    if len(fs) != 4 or any(f.degree != 2 or f.ctx != ctx for f in fs):
        raise InputError("need four quadrics in the five-variable ring")
    if any(m.exponents[free_of] for f in fs for m in f.terms):
        raise InputError(f"the f_i must not involve {ctx.var_names[free_of]}")
