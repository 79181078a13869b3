"""Prime-field scalars, monomials and homogeneous forms.

Scalars are plain ``int`` values reduced into ``[0, p)``.  Monomials are
exponent vectors ordered lexicographically with ``x1 > x2 > ... > xn``;
forms are sparse maps from monomials of one fixed degree to nonzero
coefficients.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ContextMismatchError, DegreeMismatchError, HomogeneityError, ParseError

MAX_VARS = 16
MAX_EXPONENT = 255
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingContext:
    """The ring GF(p)[x1, ..., xn] together with its variable names."""

    n: int
    p: int = 101
    var_names: tuple[str, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARS:
            raise ValueError(f"number of variables must be in [1, {MAX_VARS}], got {self.n}")
        if not 2 <= self.p < 2**31 or not is_prime(self.p):
            raise ValueError(f"modulus must be a prime below 2**31, got {self.p}")
        names = tuple(self.var_names) or tuple(f"x{i + 1}" for i in range(self.n))
        if len(names) != self.n:
            raise ValueError(f"expected {self.n} variable names, got {len(names)}")
        if len(set(names)) != self.n:
            raise ValueError(f"variable names must be distinct: {names}")
        for name in names:
            if not _IDENT.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        object.__setattr__(self, "var_names", names)

    def dim(self, d: int) -> int:
        """Dimension of the degree-d piece of the polynomial ring."""
        return comb(self.n + d - 1, d) if d >= 0 else 0


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, slots=True)
class Monomial:
    exponents: tuple[int, ...]
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 or e > MAX_EXPONENT for e in exps):
            raise ValueError(f"exponents must lie in [0, {MAX_EXPONENT}]: {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "degree", sum(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same_n(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    # Container order: degree first, then lex.  Same-degree comparisons are
    # exactly the lex order.
    def _key(self):
        return (self.degree, self.exponents)

    def __lt__(self, other):
        _check_same_n(self, other)
        return self._key() < other._key()

    def __le__(self, other):
        _check_same_n(self, other)
        return self._key() <= other._key()

    def __gt__(self, other):
        _check_same_n(self, other)
        return self._key() > other._key()

    def __ge__(self, other):
        _check_same_n(self, other)
        return self._key() >= other._key()

    def to_string(self, names: Sequence[str]) -> str:
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def _check_same_n(u: Monomial, v: Monomial) -> None:
    if len(u.exponents) != len(v.exponents):
        raise ContextMismatchError(
            f"monomials over {len(u.exponents)} and {len(v.exponents)} variables"
        )


def lex_cmp(u: Monomial, v: Monomial) -> Ordering:
    """Compare two monomials in lex order (degree first if degrees differ)."""
    _check_same_n(u, v)
    a, b = u._key(), v._key()
    if a > b:
        return Ordering.GREATER
    if a < b:
        return Ordering.LESS
    return Ordering.EQUAL


@lru_cache(maxsize=None)
def exponent_vectors(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of degree d in n variables, descending lex."""
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in exponent_vectors(n - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def exponent_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(exponent_vectors(n, d))}


@lru_cache(maxsize=None)
def _monomials(n: int, d: int) -> tuple[Monomial, ...]:
    return tuple(Monomial(e) for e in exponent_vectors(n, d))


def monomials_of_degree(ctx: RingContext, d: int) -> list[Monomial]:
    """Every monomial of degree d, strictly descending in lex order."""
    return list(_monomials(ctx.n, d))


class Form:
    """A homogeneous polynomial of a declared degree over GF(p).

    ``terms`` maps monomials (or bare exponent tuples) to integer
    coefficients; coefficients are reduced mod p and zeros dropped.  The zero
    form keeps its degree.
    """

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx: RingContext, terms: Mapping | Iterable = (), degree: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        p = ctx.p
        acc: dict[Monomial, int] = {}
        for mono, c in items:
            if not isinstance(mono, Monomial):
                mono = Monomial(tuple(mono))
            if mono.n != ctx.n:
                raise ContextMismatchError(f"monomial over {mono.n} variables in a ring with {ctx.n}")
            if degree is None:
                degree = mono.degree
            elif mono.degree != degree:
                raise HomogeneityError(f"monomial of degree {mono.degree} in a form of degree {degree}")
            acc[mono] = (acc.get(mono, 0) + int(c)) % p
        if degree is None:
            raise HomogeneityError("the degree of the zero form must be given")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", MappingProxyType({m: c for m, c in acc.items() if c}))

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    # constructors
    @classmethod
    def zero(cls, ctx: RingContext, degree: int) -> "Form":
        return cls(ctx, {}, degree)

    @classmethod
    def monomial(cls, ctx: RingContext, exponents: Sequence[int], coeff: int = 1) -> "Form":
        return cls(ctx, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, ctx: RingContext, i: int) -> "Form":
        """The variable x_{i+1} (0-based index)."""
        e = [0] * ctx.n
        e[i] = 1
        return cls.monomial(ctx, e)

    @classmethod
    def from_vector(cls, ctx: RingContext, degree: int, vec) -> "Form":
        exps = exponent_vectors(ctx.n, degree)
        vec = np.asarray(vec, dtype=np.int64)
        if vec.shape != (len(exps),):
            raise DegreeMismatchError(f"vector of length {vec.shape} for degree {degree}")
        return cls(ctx, ((exps[i], int(vec[i])) for i in np.flatnonzero(vec % ctx.p)), degree)

    def to_vector(self) -> np.ndarray:
        """Coefficient vector indexed by the descending-lex monomial basis."""
        index = exponent_index(self.ctx.n, self.degree)
        v = np.zeros(len(index), dtype=np.int64)
        for m, c in self.terms.items():
            v[index[m.exponents]] = c
        return v

    def is_zero(self) -> bool:
        return not self.terms

    def embed(self, ctx: RingContext, positions: Sequence[int]) -> "Form":
        """Rewrite in a larger ring, sending variable i to variable positions[i]."""
        if ctx.p != self.ctx.p or len(positions) != self.ctx.n:
            raise ContextMismatchError("incompatible embedding")
        out = {}
        for m, c in self.terms.items():
            e = [0] * ctx.n
            for i, a in enumerate(m.exponents):
                e[positions[i]] += a
            out[tuple(e)] = c
        return Form(ctx, out, self.degree)

    # arithmetic
    def _check(self, other: "Form"):
        if self.ctx != other.ctx:
            raise ContextMismatchError("forms over different rings")

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise HomogeneityError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return Form(self.ctx, acc, self.degree)

    def __neg__(self) -> "Form":
        return Form(self.ctx, {m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            return form_mul(self, other)
        if isinstance(other, (int, np.integer)):
            return Form(self.ctx, {m: c * int(other) for m, c in self.terms.items()}, self.degree)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.ctx == other.ctx and self.degree == other.degree and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.ctx, self.degree, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return form_print(self)

    def __repr__(self) -> str:
        return f"Form({form_print(self)!r}, degree={self.degree})"


def form_mul(f: Form, g: Form) -> Form:
    f._check(g)
    acc: dict[tuple[int, ...], int] = {}
    p = f.ctx.p
    for m1, c1 in f.terms.items():
        e1 = m1.exponents
        for m2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, m2.exponents))
            acc[e] = (acc.get(e, 0) + c1 * c2) % p
    return Form(f.ctx, acc, f.degree + g.degree)


def form_print(f: Form) -> str:
    """Render ``f`` in the text grammar accepted by :func:`form_parse`."""
    names = f.ctx.var_names
    if f.is_zero():
        if f.degree == 0:
            return "0"
        # keeps the declared degree through a parse round trip
        return "0*" + (names[0] if f.degree == 1 else f"{names[0]}^{f.degree}")
    parts = []
    for m in sorted(f.terms, key=lambda m: m.exponents, reverse=True):
        c = f.terms[m]
        if m.degree == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(m.to_string(names))
        else:
            parts.append(f"{c}*{m.to_string(names)}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([*^+]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at position {pos}")
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2)))
        else:
            tokens.append((m.group(3), m.group(3)))
        pos = m.end()
    return tokens


def form_parse(ctx: RingContext, text: str) -> Form:
    """Parse a homogeneous form.

    Grammar: ``form := term ('+' term)*``, ``term := coeff | coeff '*' mono |
    mono``, ``mono := factor ('*' factor)*``, ``factor := var | var '^' uint``.
    Coefficients are reduced mod p; subtraction is not part of the grammar.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty form")
    index = {name: i for i, name in enumerate(ctx.var_names)}
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind):
        nonlocal pos
        if peek() != kind:
            found = tokens[pos][1] if pos < len(tokens) else "end of input"
            raise ParseError(f"expected {kind}, found {found!r}")
        pos += 1
        return tokens[pos - 1][1]

    def factor(exps):
        name = take("var")
        if name not in index:
            raise ParseError(f"unknown variable {name!r}")
        e = 1
        if peek() == "^":
            take("^")
            e = int(take("int"))
        exps[index[name]] += e

    def mono():
        exps = [0] * ctx.n
        factor(exps)
        while peek() == "*":
            take("*")
            factor(exps)
        return tuple(exps)

    terms = []
    while True:
        if peek() == "int":
            c = int(take("int"))
            if peek() == "*":
                take("*")
                exps = mono()
            else:
                exps = (0,) * ctx.n
        else:
            c = 1
            exps = mono()
        if any(e > MAX_EXPONENT for e in exps):
            raise ParseError(f"exponent above {MAX_EXPONENT}")
        terms.append((exps, c))
        if peek() is None:
            break
        take("+")
    degrees = {sum(e) for e, _ in terms}
    if len(degrees) > 1:
        raise HomogeneityError(f"terms of different degrees {sorted(degrees)} in {text!r}")
    return Form(ctx, terms, degrees.pop())
