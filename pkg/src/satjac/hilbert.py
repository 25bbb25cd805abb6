"""Hilbert functions of graded quotients R/I, scheme lengths and defect profiles.

Hilbert functions come from the leading-term ideal: the Hilbert series
numerator of a monomial ideal is computed by recursive pivoting, then
h(e) is a binomial sum. ``ci_hilbert`` is a separate closed-form path for
complete intersections and shares no code with the Groebner route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Sequence

from .errors import DimensionMismatch, InputError, InternalInconsistency
from .ideals import Ideal, krull_dimension


# monomial ideal Hilbert series


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _poly_add(a, b, sign=1):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += sign * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a, k):
    return [0] * k + list(a)


def _numerator(gens: tuple, memo: dict) -> list[int]:
    if not gens:
        return [1]
    hit = memo.get(gens)
    if hit is not None:
        return hit
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    disjoint = True
    seen = set()
    for s in supports:
        if seen & s:
            disjoint = False
            break
        seen |= s
    if disjoint:
        out = [1]
        for m in gens:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1]) if d else [0]
        memo[gens] = out
        return out
    # pivot on the variable shared by the most mixed generators
    nv = len(gens[0])
    mixed = [m for m, s in zip(gens, supports) if len(s) > 1]
    counts = [sum(1 for m in mixed if m[j]) for j in range(nv)]
    j = max(range(nv), key=lambda k: (counts[k], -k))
    exps = sorted(m[j] for m in mixed if m[j])
    e = exps[len(exps) // 2]
    pivot = tuple(e if k == j else 0 for k in range(nv))
    plus = tuple(_minimalize(list(gens) + [pivot]))
    colon = tuple(_minimalize([tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in gens]))
    out = _poly_add(_numerator(plus, memo), _shift(_numerator(colon, memo), e))
    memo[gens] = out
    return out


def hilbert_numerator(monomials: Sequence[tuple]) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^nvars of R/(monomials)."""
    gens = tuple(_minimalize([tuple(m) for m in monomials]))
    return _numerator(gens, {})


def _binomial_sum(numer, nvars, e):
    total = 0
    for j, c in enumerate(numer):
        if c and e - j >= 0:
            total += c * comb(e - j + nvars - 1, nvars - 1)
    return total


@dataclass
class HilbertProfile:
    """Hilbert function of R/I on degrees 0..max_degree."""

    values: dict[int, int]
    stabilization_degree: int | None
    stable_value: int | None


@dataclass
class _Series:
    numerator: list[int]
    nvars: int
    dim: int

    def h(self, e: int) -> int:
        if e < 0:
            return 0
        return _binomial_sum(self.numerator, self.nvars, e)


def _series(ideal: Ideal) -> _Series:
    gb = ideal.groebner_basis()
    numer = hilbert_numerator(gb.leading_monomials()) if gb.elements else [1]
    return _Series(numer, ideal.ring.num_vars, krull_dimension(ideal))


def hilbert_function(ideal: Ideal, e: int) -> int:
    """dim_Q (R/I)_e."""
    return _series(ideal).h(e)


def hilbert_profile(ideal: Ideal, max_degree: int) -> HilbertProfile:
    s = _series(ideal)
    values = {e: s.h(e) for e in range(max_degree + 1)}
    if s.dim == 1:
        q, xi = _reduced_numerator(s)
        return HilbertProfile(values, len(q) - 1, xi)
    if s.dim <= 0:
        return HilbertProfile(values, len(s.numerator) - 1 if s.dim == 0 else 0, 0)
    return HilbertProfile(values, None, None)


def _reduced_numerator(s: _Series) -> tuple[list[int], int]:
    # N(t) = Q(t) (1-t)^(nvars-1) for a one-dimensional quotient
    q = list(s.numerator)
    for _ in range(s.nvars - 1):
        # synthetic division by (1 - t)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        if acc + q[-1] != 0:
            raise InternalInconsistency("Hilbert numerator not divisible by (1-t)")
        q = out or [0]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q, sum(q)


def _require_points(ideal: Ideal) -> _Series:
    s = _series(ideal)
    if s.dim != 1:
        raise DimensionMismatch(
            f"expected a zero-dimensional projective scheme (Krull dimension 1), got {s.dim}"
        )
    return s


def scheme_length(ideal_sat: Ideal) -> int:
    """Length of the zero-dimensional scheme cut out by a saturated ideal."""
    s = _require_points(ideal_sat)
    _, xi = _reduced_numerator(s)
    return xi


def first_repeat_degree(ideal_sat: Ideal) -> int:
    """First e with h(e) == h(e+1), searched up to (max generator degree)*(n+1)."""
    s = _require_points(ideal_sat)
    gb = ideal_sat.groebner_basis()
    cap = max((g.degree() for g in gb.elements), default=1) * ideal_sat.ring.num_vars
    prev = s.h(0)
    for e in range(cap + 1):
        cur = s.h(e + 1)
        if cur == prev:
            return e
        prev = cur
    raise InternalInconsistency(f"Hilbert function did not stabilize by degree {cap}")


@dataclass
class DefectProfile:
    """defect(e) = xi - h_{R/I^sat}(e) for 0 <= e <= max_degree."""

    xi: int
    defects: dict[int, int]
    hilbert: dict[int, int]
    stabilization_degree: int
    max_degree: int
    last_positive_degree: int | None = field(default=None)

    def defect(self, e: int) -> int:
        if e < 0:
            return self.xi
        if e in self.defects:
            return self.defects[e]
        if e >= self.stabilization_degree:
            return 0
        raise InputError(f"defect profile computed only up to degree {self.max_degree}")

    def h(self, e: int) -> int:
        return self.xi - self.defect(e)

    def rows(self) -> list[dict]:
        return [{"e": e, "h": self.hilbert[e], "defect": self.defects[e]} for e in sorted(self.defects)]

    @classmethod
    def from_rows(cls, xi, rows, stabilization_degree):
        hilb = {r["e"]: r["h"] for r in rows}
        return cls.build(xi, hilb, stabilization_degree)

    @classmethod
    def build(cls, xi: int, hilbert: dict[int, int], stabilization_degree: int) -> "DefectProfile":
        defects = {}
        last = None
        prev = None
        for e in sorted(hilbert):
            d = xi - hilbert[e]
            if d < 0:
                raise InternalInconsistency(f"negative defect {d} in degree {e}")
            if prev is not None and d > prev:
                raise InternalInconsistency(f"defect increases from degree {e - 1} to {e}")
            defects[e] = d
            if d > 0:
                last = e
            prev = d
        max_degree = max(hilbert, default=-1)
        return cls(xi, defects, dict(hilbert), stabilization_degree, max_degree, last)


def defect_profile(ideal_sat: Ideal, max_degree: int) -> DefectProfile:
    """Defects of a saturated zero-dimensional ideal in degrees 0..max_degree."""
    s = _require_points(ideal_sat)
    q, xi = _reduced_numerator(s)
    hilb = {e: s.h(e) for e in range(max_degree + 1)}
    return DefectProfile.build(xi, hilb, len(q) - 1)


# complete intersections


@dataclass(frozen=True)
class CIData:
    degrees: tuple[int, ...]
    num_vars: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if len(self.degrees) > self.num_vars:
            raise InputError("more forms than variables")
        if any(d < 0 for d in self.degrees):
            raise InputError("degrees must be non-negative")


def ci_hilbert(ci: CIData, e: int) -> int:
    """Coefficient of t^e in prod(1 - t^d_i) / (1 - t)^num_vars."""
    if e < 0:
        return 0
    series = [0] * (e + 1)
    series[0] = 1
    for d in ci.degrees:
        # multiply by (1 - t^d), truncated
        for k in range(e, -1, -1):
            if k - d >= 0:
                series[k] -= series[k - d]
    for _ in range(ci.num_vars):
        # divide by (1 - t): prefix sums
        acc = 0
        for k in range(e + 1):
            acc += series[k]
            series[k] = acc
    return series[e]


def ci_length(ci: CIData) -> int:
    """Bezout number of a zero-dimensional complete intersection."""
    return prod(ci.degrees)


def ci_last_defect_degree(ci: CIData) -> int:
    """Socle degree sum(d_i) - num_vars: last degree with positive defect."""
    if len(ci.degrees) != ci.num_vars - 1:
        raise DimensionMismatch("need num_vars - 1 forms for a zero-dimensional complete intersection")
    return sum(ci.degrees) - ci.num_vars


def ci_defect(ci: CIData, e: int) -> int:
    return ci_length(ci) - ci_hilbert(ci, e)
