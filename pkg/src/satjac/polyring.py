"""Sparse multivariate polynomials over Q in graded variables x0..xn.

Monomials are plain tuples of exponents. Polynomials are immutable maps
from monomials to nonzero ``Fraction`` coefficients.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ExponentOverflowError,
    InputError,
    PolySyntaxError,
    RingMismatchError,
    UnknownVariableError,
)

MAX_EXPONENT = 32767
DEFAULT_POOL = tuple(c for c in range(-9, 10) if c != 0)


class MonomialOrder(enum.Enum):
    GREVLEX = "grevlex"


@dataclass(frozen=True)
class RingContext:
    """Q[x0, ..., x_{num_vars-1}] with a fixed global monomial order."""

    num_vars: int
    monomial_order: MonomialOrder = MonomialOrder.GREVLEX

    def __post_init__(self):
        if self.num_vars < 2:
            raise InputError("a ring needs at least two variables")

    @classmethod
    def projective(cls, n: int) -> "RingContext":
        """Coordinate ring of P^n."""
        return cls(n + 1)

    @property
    def n(self) -> int:
        return self.num_vars - 1

    def variable(self, i: int) -> "Polynomial":
        self._check_index(i)
        e = [0] * self.num_vars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.variable(i) for i in range(self.num_vars)]

    def one(self) -> "Polynomial":
        return self.constant(1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.num_vars: c})

    def monomials(self, degree: int) -> list[tuple]:
        """All monomials of the given degree, largest first."""
        if degree < 0:
            return []
        out = [m for m in _compositions(degree, self.num_vars)]
        out.sort(key=grevlex_key, reverse=True)
        return out

    def _check_index(self, i):
        if not 0 <= i < self.num_vars:
            raise InputError(f"variable index {i} out of range for {self.num_vars} variables")


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def grevlex_key(m: tuple) -> tuple:
    # larger key = larger monomial; ties in degree broken by the last variable
    return (sum(m),) + tuple(-e for e in reversed(m))


def monomial_degree(m: tuple) -> int:
    return sum(m)


def graded_dim(ring: RingContext, e: int) -> int:
    """dim_Q of the degree-e piece of the ring."""
    if e < 0:
        return 0
    return math.comb(e + ring.n, ring.n)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, (np.integer,)):
        return Fraction(int(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Polynomial:
    __slots__ = ("ring", "_terms", "_hash", "_sorted")

    def __init__(self, ring: RingContext, terms: Mapping[tuple, object] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            nv = ring.num_vars
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nv or any(e < 0 for e in m):
                    raise InputError(f"bad exponent vector {m} for {nv} variables")
                c = _as_fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None
        self._sorted = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already normalized
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        p._sorted = None
        return p

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in decreasing monomial order."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        return self._sorted

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int | None:
        """Total degree; None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self) -> tuple[bool, int | None]:
        """(True, d) if every term has degree d; (True, None) for zero."""
        if not self._terms:
            return True, None
        degs = {sum(m) for m in self._terms}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def leading_monomial(self) -> tuple:
        if not self._terms:
            raise InputError("zero polynomial has no leading monomial")
        return self.sorted_terms()[0][0]

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise InputError("zero polynomial has no leading coefficient")
        return self.sorted_terms()[0][1]

    def coefficient(self, m: tuple) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def constant_value(self) -> Fraction | None:
        """The value if this is a constant polynomial, else None."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1:
            m, c = next(iter(self._terms.items()))
            if not any(m):
                return c
        return None

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, m: tuple, c=1) -> "Polynomial":
        c = _as_fraction(c)
        return Polynomial._raw(
            self.ring, {tuple(a + b for a, b in zip(k, m)): c * v for k, v in self._terms.items()}
        )

    def partial(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to x_i."""
        self.ring._check_index(i)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = c * e
        return Polynomial._raw(self.ring, out)

    def substitute(self, values: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate at polynomials ``values`` (one per variable), possibly in another ring."""
        if len(values) != self.ring.num_vars:
            raise InputError("need one substitution value per variable")
        target = values[0].ring
        if any(v.ring != target for v in values):
            raise RingMismatchError("substitution values live in different rings")
        powers = [dict() for _ in values]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = values[i] ** e
            return cache[e]

        result = target.zero()
        for m, c in self.sorted_terms():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """Rename x_i -> x_{perm[i]}."""
        out = {}
        for m, c in self._terms.items():
            mm = [0] * len(m)
            for i, e in enumerate(m):
                mm[perm[i]] = e
            out[tuple(mm)] = c
        return Polynomial._raw(self.ring, out)

    def exact_divide(self, other: "Polynomial") -> "Polynomial":
        """Quotient self / other; raises if the division is not exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.sorted_terms()[0]
        rem = self
        quot = {}
        while rem:
            m, c = rem.sorted_terms()[0]
            q = tuple(a - b for a, b in zip(m, lm))
            if any(e < 0 for e in q):
                raise InputError("polynomial division is not exact")
            qc = c / lc
            quot[q] = quot.get(q, 0) + qc
            rem = rem - other.mul_monomial(q, qc)
        return Polynomial(self.ring, quot)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, num_vars={self.ring.num_vars})"


def format_monomial(m: tuple) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    """Canonical text form in the input grammar, terms in decreasing order."""
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        mono = format_monomial(m)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(("name", m.group(3), start))
        else:
            ch = m.group(4)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.take()
        if kind != "op" or val != ch:
            raise PolySyntaxError(f"expected {ch!r}", pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty input", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected token {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.factor()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e, epos = self.take()
            if kind != "int":
                raise PolySyntaxError("exponent must be a non-negative integer literal", epos)
            if e > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {e} exceeds {MAX_EXPONENT}", epos)
            nk, nv, npos = self.peek()
            if nk == "op" and nv == "^":
                raise PolySyntaxError("chained exponents are not allowed", npos)
            if isinstance(base, tuple):
                return self._mono(base[1], e, base[2])
            return base ** e
        if isinstance(base, tuple):
            return self._mono(base[1], 1, base[2])
        return base

    def _mono(self, idx, e, pos):
        m = [0] * self.ring.num_vars
        m[idx] = e
        return Polynomial._raw(self.ring, {tuple(m): Fraction(1)})

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            num = val
            nk, nv, npos = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, den, dpos = self.take()
                if dk != "int":
                    raise PolySyntaxError("expected integer denominator", dpos)
                if den == 0:
                    raise PolySyntaxError("zero denominator", dpos)
                return self.ring.constant(Fraction(num, den))
            return self.ring.constant(num)
        if kind == "var":
            idx = int(val[1:])
            if idx >= self.ring.num_vars:
                raise UnknownVariableError(f"unknown variable {val}", pos)
            # deferred so that x^e builds the monomial directly
            return ("var", idx, pos)
        if kind == "name":
            raise UnknownVariableError(f"unknown variable {val}", pos)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    """Parse ``text`` in the polynomial grammar.

    Variables are ``x0`` .. ``x<n>``; literals are integers or ``p/q``;
    ``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``.
    Juxtaposition is a syntax error.
    """
    return _Parser(text, ring).parse()


# random forms


class FormSampler:
    """Deterministic source of dense random forms.

    Uses the Philox4x64-10 counter-based generator keyed directly by the
    seed (no seed hashing); each coefficient consumes one raw 64-bit output
    and is taken as ``pool[raw % len(pool)]``. Monomials are visited in
    decreasing grevlex order. ``attempt`` goes into the high 64 bits of the
    128-bit key so that reseeding yields independent streams.
    """

    def __init__(self, seed: int, attempt: int = 0, pool: Sequence[int] = DEFAULT_POOL):
        if not pool:
            raise InputError("coefficient pool is empty")
        self.pool = tuple(pool)
        self.seed = seed % (1 << 64)
        self.attempt = attempt
        key = self.seed | (attempt << 64)
        self._bits = np.random.Philox(key=key)

    def raw(self) -> int:
        return int(self._bits.random_raw())

    def coefficient(self) -> int:
        return self.pool[self.raw() % len(self.pool)]

    def form(self, ring: RingContext, degree: int) -> Polynomial:
        if degree < 0:
            raise InputError("degree must be non-negative")
        return Polynomial(ring, {m: self.coefficient() for m in ring.monomials(degree)})


def random_general_form(ring: RingContext, degree: int, rng_seed: int,
                        pool: Sequence[int] = DEFAULT_POOL) -> Polynomial:
    """Dense homogeneous form of ``degree`` with coefficients drawn from ``pool``."""
    return FormSampler(rng_seed, pool=pool).form(ring, degree)


def euler_sum(f: Polynomial) -> Polynomial:
    """sum_i x_i * df/dx_i."""
    ring = f.ring
    out = ring.zero()
    for i in range(ring.num_vars):
        out = out + ring.variable(i) * f.partial(i)
    return out


def products(polys: Iterable[Polynomial], ring: RingContext) -> Polynomial:
    result = ring.one()
    for p in polys:
        result = result * p
    return result


def multisets(items: Sequence, size: int):
    return itertools.combinations_with_replacement(items, size)
