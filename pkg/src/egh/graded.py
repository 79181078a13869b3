"""Graded pieces of ideals and quotients as subspaces of R_d.

Two independent routes compute the same dimensions:

* Macaulay matrices.  ``ideal_piece`` spans every monomial multiple of the
  generators in one degree and row-reduces; ``colon_piece`` takes kernels of
  multiply-then-reduce maps.  Everything is a :class:`GradedBasis`.
* :class:`QuotientTower`.  Builds R/I degree by degree as the cokernel of
  the Koszul relations inside ``R_1 (x) (R/I)_{d-1}``, keeping only the
  multiplication-by-variable matrices.  Its cost is governed by the
  Hilbert function of the quotient, not by ``dim R_d``, which is what makes
  socle-degree computations affordable for six or seven variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import Form, RingContext, exponent_index, exponent_vectors
from .errors import ContextMismatchError, DegreeMismatchError, InputError

OSequence = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GradedBasis:
    """RREF basis of a subspace of R_d.

    Columns follow ``monomials_of_degree(ctx, d)`` (descending lex).
    """

    ctx: RingContext
    degree: int
    matrix: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, ctx: RingContext, degree: int, rows) -> "GradedBasis":
        ncols = ctx.dim(degree)
        R, pivots = linalg.rref(linalg.as_matrix(rows, ctx.p, ncols), ctx.p, ncols)
        return cls(ctx, degree, R, pivots)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def ambient_dim(self) -> int:
        return self.ctx.dim(self.degree)

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, rows) -> np.ndarray:
        """Reduce coefficient vectors modulo this subspace."""
        X = linalg.as_matrix(rows, self.ctx.p, self.ambient_dim)
        return linalg.reduce_rows(X, self.matrix, self.pivots, self.ctx.p)

    def contains(self, f: Form) -> bool:
        if f.degree != self.degree:
            return f.is_zero()
        return not np.any(self.reduce(f.to_vector()[None, :]))

    def contains_basis(self, other: "GradedBasis") -> bool:
        _check_compatible(self, other)
        return not np.any(self.reduce(other.matrix))

    def forms(self) -> list[Form]:
        return [Form.from_vector(self.ctx, self.degree, row) for row in self.matrix]

    def __add__(self, other: "GradedBasis") -> "GradedBasis":
        _check_compatible(self, other)
        return GradedBasis.from_rows(self.ctx, self.degree, np.vstack([self.matrix, other.matrix]))

    def __repr__(self) -> str:
        return f"GradedBasis(degree={self.degree}, dim={self.dim}/{self.ambient_dim})"


def _check_compatible(U: GradedBasis, V: GradedBasis) -> None:
    if U.ctx != V.ctx:
        raise ContextMismatchError("subspaces of different rings")
    if U.degree != V.degree:
        raise DegreeMismatchError(f"subspaces of R_{U.degree} and R_{V.degree}")


def _context_of(forms: Sequence[Form]) -> RingContext:
    ctx = forms[0].ctx
    for f in forms:
        if f.ctx != ctx:
            raise ContextMismatchError("forms over different rings")
    return ctx


def multiplication_matrix(f: Form, d: int) -> np.ndarray:
    """Rows are ``m * f`` for the monomials m of degree d, in the R_{d+e} basis."""
    ctx = f.ctx
    mults = exponent_vectors(ctx.n, d)
    target = exponent_index(ctx.n, d + f.degree)
    M = np.zeros((len(mults), len(target)), dtype=np.int64)
    for mono, c in f.terms.items():
        e = mono.exponents
        cols = [target[tuple(a + b for a, b in zip(m, e))] for m in mults]
        M[np.arange(len(mults)), cols] = c
    return M


def span(forms: Sequence[Form], d: int, ctx: RingContext | None = None) -> GradedBasis:
    """K-span of forms of degree d."""
    if not forms:
        if ctx is None:
            raise InputError("span of no forms needs an explicit ring")
        return GradedBasis.from_rows(ctx, d, np.zeros((0, ctx.dim(d)), dtype=np.int64))
    ctx = _context_of(forms)
    for f in forms:
        if f.degree != d:
            raise DegreeMismatchError(f"form of degree {f.degree} in a span of degree {d}")
    return GradedBasis.from_rows(ctx, d, np.array([f.to_vector() for f in forms]))


def ideal_piece(gens: Sequence[Form], d: int, ctx: RingContext | None = None) -> GradedBasis:
    """Degree-d piece of the ideal generated by ``gens``."""
    if gens:
        ctx = _context_of(gens)
    elif ctx is None:
        raise InputError("ideal of no generators needs an explicit ring")
    blocks = [multiplication_matrix(g, d - g.degree) for g in gens if g.degree <= d and not g.is_zero()]
    rows = np.vstack(blocks) if blocks else np.zeros((0, ctx.dim(d)), dtype=np.int64)
    return GradedBasis.from_rows(ctx, d, rows)


def subspace_dims(U: GradedBasis, V: GradedBasis) -> tuple[int, int, int, int]:
    """``(dim U, dim V, dim (U + V), dim (U & V))``."""
    _check_compatible(U, V)
    total = linalg.rank(np.vstack([U.matrix, V.matrix]), U.ctx.p, U.ambient_dim)
    return U.dim, V.dim, total, U.dim + V.dim - total


def colon_piece(modulus_gens: Sequence[Form], targets: Sequence[Form], d: int,
                ctx: RingContext | None = None) -> GradedBasis:
    """Degree-d piece of ``(modulus_gens) : (targets)``.

    Computed as the common kernel of ``u -> u*t mod (modulus_gens)`` over all
    targets t.
    """
    if not targets:
        raise InputError("colon needs at least one target")
    ctx = _context_of(list(targets) + list(modulus_gens))
    pieces: dict[int, GradedBasis] = {}
    blocks = []
    for t in targets:
        e = t.degree
        if e not in pieces:
            pieces[e] = ideal_piece(modulus_gens, d + e, ctx)
        blocks.append(pieces[e].reduce(multiplication_matrix(t, d)))
    K = np.hstack(blocks)
    return GradedBasis.from_rows(ctx, d, linalg.left_kernel(K, ctx.p))


def complete_intersection_hf(degrees: Sequence[int]) -> OSequence:
    """Coefficients of prod (1 + t + ... + t^(a-1)), including the trailing 0."""
    coeffs = [1]
    for a in degrees:
        out = [0] * (len(coeffs) + a - 1)
        for i, c in enumerate(coeffs):
            for j in range(a):
                out[i + j] += c
        coeffs = out
    return tuple(coeffs) + (0,)


class QuotientTower:
    """The graded quotient R/I, one degree at a time.

    Degree d of the quotient is ``R_1 (x) A_{d-1}`` modulo the images of the
    Koszul relations ``x_i (x) x_j w - x_j (x) x_i w`` and of the degree-d
    generators.  Only the matrices of multiplication by each variable,
    ``A_{d-1} -> A_d``, are stored.
    """

    def __init__(self, ctx: RingContext, gens: Sequence[Form]):
        self.ctx = ctx
        self._gens: dict[int, list[Form]] = {}
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatchError("generator over a different ring")
            if not g.is_zero():
                self._gens.setdefault(g.degree, []).append(g)
        self._dims = [0 if self._gens.get(0) else 1]
        self._var_mult: list[list[np.ndarray]] = []  # [d][k]: A_d -> A_{d+1}
        self._nf: dict[tuple[int, ...], np.ndarray] = {(0,) * ctx.n: np.ones(self._dims[0], dtype=np.int64)}
        self._mono_mult: dict[tuple[int, tuple[int, ...]], np.ndarray] = {}

    @property
    def computed_degree(self) -> int:
        return len(self._dims) - 1

    def dim(self, d: int) -> int:
        """Hilbert function of R/I at d."""
        if d < 0:
            return 0
        while self.computed_degree < d:
            self._extend()
        return self._dims[d]

    def hilbert(self, D: int) -> OSequence:
        self.dim(D)
        return tuple(self._dims[: D + 1])

    def _extend(self) -> None:
        p, n = self.ctx.p, self.ctx.n
        d = self.computed_degree + 1
        h = self._dims[d - 1]
        nv = n * h
        if h == 0:
            self._dims.append(0)
            self._var_mult.append([np.zeros((0, 0), dtype=np.int64)] * n)
            return
        blocks = []
        if d >= 2:
            M = self._var_mult[d - 2]
            h2 = self._dims[d - 2]
            if h2:
                for i, j in combinations(range(n), 2):
                    rel = np.zeros((h2, nv), dtype=np.int64)
                    rel[:, i * h:(i + 1) * h] = M[j]
                    rel[:, j * h:(j + 1) * h] = (-M[i]) % p
                    blocks.append(rel)
        gens = self._gens.get(d, [])
        if gens:
            G = np.zeros((len(gens), nv), dtype=np.int64)
            for r, g in enumerate(gens):
                for mono, c in g.terms.items():
                    e = mono.exponents
                    k = next(i for i, a in enumerate(e) if a)
                    lower = e[:k] + (e[k] - 1,) + e[k + 1:]
                    sl = slice(k * h, (k + 1) * h)
                    G[r, sl] = (G[r, sl] + c * self._normal_form_mono(lower)) % p
            blocks.append(G)
        if blocks:
            R, pivots = linalg.rref(np.vstack(blocks), p, nv)
        else:
            R, pivots = np.zeros((0, nv), dtype=np.int64), ()
        pivot_set = set(pivots)
        free = [c for c in range(nv) if c not in pivot_set]
        proj = np.zeros((nv, len(free)), dtype=np.int64)
        proj[free, np.arange(len(free))] = 1
        if pivots:
            proj[list(pivots)] = (-R[:, free]) % p
        self._dims.append(len(free))
        self._var_mult.append([proj[k * h:(k + 1) * h] for k in range(n)])

    def _normal_form_mono(self, e: tuple[int, ...]) -> np.ndarray:
        v = self._nf.get(e)
        if v is None:
            d = sum(e)
            self.dim(d)
            k = next(i for i, a in enumerate(e) if a)
            lower = e[:k] + (e[k] - 1,) + e[k + 1:]
            v = linalg.matmul_mod(self._normal_form_mono(lower)[None, :], self._var_mult[d - 1][k], self.ctx.p)[0]
            self._nf[e] = v
        return v

    def normal_form(self, f: Form) -> np.ndarray:
        """Coordinates of the image of f in (R/I)_{deg f}."""
        h = self.dim(f.degree)
        v = np.zeros(h, dtype=np.int64)
        for mono, c in f.terms.items():
            v = (v + c * self._normal_form_mono(mono.exponents)) % self.ctx.p
        return v

    def _monomial_map(self, i: int, e: tuple[int, ...]) -> np.ndarray:
        key = (i, e)
        M = self._mono_mult.get(key)
        if M is None:
            k = next((j for j, a in enumerate(e) if a), None)
            if k is None:
                M = np.eye(self.dim(i), dtype=np.int64)
            else:
                rest = e[:k] + (e[k] - 1,) + e[k + 1:]
                self.dim(i + 1)
                M = linalg.matmul_mod(self._var_mult[i][k], self._monomial_map(i + 1, rest), self.ctx.p)
            self._mono_mult[key] = M
        return M

    def mult_matrix(self, f: Form, i: int) -> np.ndarray:
        """Matrix of multiplication by f, ``(R/I)_i -> (R/I)_{i+deg f}`` (row vectors)."""
        if f.ctx != self.ctx:
            raise ContextMismatchError("form over a different ring")
        M = np.zeros((self.dim(i), self.dim(i + f.degree)), dtype=np.int64)
        for mono, c in f.terms.items():
            M = (M + c * self._monomial_map(i, mono.exponents)) % self.ctx.p
        return M

    def image_dim(self, forms: Sequence[Form], i: int) -> int:
        """Rank of ``u -> (u*f for f in forms)`` on (R/I)_i."""
        if not forms or self.dim(i) == 0:
            return 0
        K = np.hstack([self.mult_matrix(f, i) for f in forms])
        return linalg.rank(K, self.ctx.p, K.shape[1])


def hilbert_function(gens: Sequence[Form], D: int, ctx: RingContext | None = None,
                     method: str = "quotient") -> OSequence:
    """Hilbert function of R/(gens) in degrees 0..D.

    ``method="quotient"`` uses :class:`QuotientTower`; ``method="macaulay"``
    subtracts ``dim ideal_piece`` from ``dim R_d`` degree by degree.
    """
    if gens:
        ctx = _context_of(gens)
    elif ctx is None:
        raise InputError("Hilbert function of no generators needs an explicit ring")
    if method == "quotient":
        return QuotientTower(ctx, gens).hilbert(D)
    if method == "macaulay":
        return tuple(ctx.dim(d) - ideal_piece(gens, d, ctx).dim for d in range(D + 1))
    raise ValueError(f"unknown method {method!r}")


class ArtinQuotient:
    """A = R/c for a regular sequence c of n forms in n variables.

    Validation compares the Hilbert function through the socle degree plus one
    with the complete-intersection series.  Degree pieces of c are cached.
    """

    def __init__(self, ctx: RingContext, ci_generators: Sequence[Form], validate: bool = True):
        if len(ci_generators) != ctx.n:
            raise InputError(f"expected {ctx.n} forms, got {len(ci_generators)}")
        for f in ci_generators:
            if f.ctx != ctx:
                raise ContextMismatchError("generator over a different ring")
        self.ctx = ctx
        self.ci_generators = tuple(ci_generators)
        self.degrees = tuple(f.degree for f in ci_generators)
        self.socle_degree = sum(a - 1 for a in self.degrees)
        self.tower = QuotientTower(ctx, ci_generators)
        self._bases: dict[int, GradedBasis] = {}
        if validate and not self.is_complete_intersection():
            raise InputError("generators do not form a regular sequence")

    def is_complete_intersection(self) -> bool:
        expected = complete_intersection_hf(self.degrees)
        return self.tower.hilbert(self.socle_degree + 1) == expected

    def hf(self, d: int) -> int:
        return self.tower.dim(d)

    def hilbert(self, D: int | None = None) -> OSequence:
        return self.tower.hilbert(self.socle_degree + 1 if D is None else D)

    def ci_basis(self, d: int) -> GradedBasis:
        B = self._bases.get(d)
        if B is None:
            B = self._bases[d] = ideal_piece(self.ci_generators, d)
        return B

    def mult_matrix(self, f: Form, i: int) -> np.ndarray:
        return self.tower.mult_matrix(f, i)

    def image_dim(self, forms: Sequence[Form], i: int) -> int:
        """``dim (forms) A_i`` inside A_{i+e}; for several forms of one degree, the span."""
        return self.tower.image_dim(forms, i)

    def colon_hf(self, targets: Sequence[Form], k: int) -> int:
        """Hilbert function of ``R/(c : targets)`` at k."""
        return self.tower.image_dim(targets, k)

    def colon_dim(self, targets: Sequence[Form], k: int) -> int:
        """``dim (c : targets)_k``."""
        return self.ctx.dim(k) - self.colon_hf(targets, k)


def annihilator_dim(A: ArtinQuotient, g: Form, i: int) -> int:
    """Dimension of the kernel of multiplication by g on A_i."""
    return A.hf(i) - A.image_dim([g], i)
