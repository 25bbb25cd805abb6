"""Homogeneous ideals of Q[x0..xn]: Groebner bases, colon, saturation, dimension."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm as _ilcm
from typing import Iterable, Sequence

from . import groebner as eng
from .errors import InputError, NonHomogeneousError, RingMismatchError
from .polyring import MonomialOrder, Polynomial, RingContext


def _to_engine(p: Polynomial, pk: eng.Packing) -> tuple[dict, Fraction]:
    """Clear denominators: returns (integer dict, factor) with p == factor * dict."""
    den = 1
    for c in p.terms.values():
        den = _ilcm(den, c.denominator)
    out = {pk.pack(m): int(c * den) for m, c in p.terms.items()}
    prim = eng.primitive(out)
    content = next(iter(out.values())) // next(iter(prim.values())) if out else 1
    return prim, Fraction(content, den)


def _from_engine(terms, ring: RingContext, pk: eng.Packing, monic=True) -> Polynomial:
    if not terms:
        return ring.zero()
    if isinstance(terms, dict):
        items = terms.items()
    else:
        items = terms
    items = list(items)
    if monic:
        lc = items[0][1]
        return Polynomial._raw(ring, {pk.unpack(m): Fraction(int(c), int(lc)) for m, c in items})
    return Polynomial._raw(ring, {pk.unpack(m): Fraction(int(c)) for m, c in items})


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, sorted by increasing leading monomial."""

    ring: RingContext
    elements: tuple[Polynomial, ...]
    order: MonomialOrder = MonomialOrder.GREVLEX
    _engine: tuple = field(default=(), repr=False, compare=False)

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].constant_value() is not None

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _engine_basis(gb: GroebnerBasis, pk):
    if gb._engine:
        return gb._engine[1]
    elts = []
    for g in gb.elements:
        d, _ = _to_engine(g, pk)
        elts.append(d)
    terms = [eng.sort_terms(eng.to_coeffs(d), eng.Grevlex(pk)) for d in elts]
    out = eng.elts_from_terms(terms)
    object.__setattr__(gb, "_engine", (pk, out))
    return out


class Ideal:
    """Ideal generated by homogeneous polynomials; caches its reduced Groebner basis."""

    def __init__(self, generators: Iterable[Polynomial], ring: RingContext | None = None):
        gens = [g for g in generators]
        if ring is None:
            if not gens:
                raise InputError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if not g.is_homogeneous()[0]:
                raise NonHomogeneousError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.generators = tuple(g for g in gens if g)
        self._gb = None
        self.stats = None

    @classmethod
    def unit(cls, ring):
        return cls([ring.one()], ring)

    def groebner_basis(self) -> GroebnerBasis:
        if self._gb is None:
            pk = eng.Packing(self.ring.num_vars)
            order = eng.Grevlex(pk)
            polys = [_to_engine(g, pk)[0] for g in self.generators]
            stats = eng.EngineStats()
            terms = eng.groebner(polys, pk, order, stats=stats)
            elements = tuple(_from_engine(t, self.ring, pk) for t in terms)
            # write-once memo; a concurrent duplicate computes the same basis
            self._gb = GroebnerBasis(self.ring, elements, _engine=(pk, eng.elts_from_terms(terms)))
            self.stats = stats
        return self._gb

    def is_unit(self) -> bool:
        return self.groebner_basis().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner_basis()).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        gb = other.groebner_basis()
        return all(normal_form(g, gb).is_zero() for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis().elements == other.groebner_basis().elements

    def __hash__(self):
        return hash((self.ring, self.groebner_basis().elements))

    def max_generator_degree(self) -> int:
        return max((g.degree() for g in self.generators), default=0)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def jacobian_ideal(f: Polynomial) -> Ideal:
    """Ideal of the n+1 partial derivatives of a homogeneous form of degree >= 1."""
    homog, d = f.is_homogeneous()
    if not homog:
        raise NonHomogeneousError("the defining polynomial must be homogeneous")
    if d is None or d < 1:
        raise InputError("the defining polynomial must have degree at least 1")
    ring = f.ring
    return Ideal([f.partial(i) for i in range(ring.num_vars)], ring)


def groebner_basis(ideal: Ideal) -> GroebnerBasis:
    return ideal.groebner_basis()


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the ideal of ``gb``."""
    if f.ring != gb.ring:
        raise RingMismatchError("polynomial and basis live in different rings")
    if f.is_zero():
        return f
    pk = eng.Packing(gb.ring.num_vars)
    basis = _engine_basis(gb, pk)
    if gb._engine:
        pk = gb._engine[0]
    order = eng.Grevlex(pk)
    d, factor = _to_engine(f, pk)
    r, mult = eng.reduce_full(eng.to_coeffs(d), basis, pk, order)
    if not r:
        return gb.ring.zero()
    scale = factor / int(mult)
    return Polynomial._raw(gb.ring, {pk.unpack(m): scale * int(c) for m, c in r.items()})


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")
    return Ideal(a.generators + b.generators, a.ring)


def _extend(p: Polynomial, pk: eng.Packing, extra: int = 0) -> dict:
    """Engine form of p in a ring with one more variable (last), times t^extra."""
    d, _ = _to_engine(p, eng.Packing(p.ring.num_vars))
    out = {}
    src = eng.Packing(p.ring.num_vars)
    for m, c in d.items():
        out[pk.pack(src.unpack(m) + (extra,))] = c
    return out


def ideal_intersection(a: Ideal, b: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1 - t)*J."""
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal([], ring)
    if a.is_unit():
        return Ideal(b.groebner_basis().elements, ring)
    if b.is_unit():
        return Ideal(a.groebner_basis().elements, ring)
    pk = eng.Packing(ring.num_vars + 1)
    order = eng.EliminateLast(pk)
    polys = []
    for g in a.generators:
        polys.append(_extend(g, pk, 1))
    for h in b.generators:
        plain = _extend(h, pk, 0)
        with_t = _extend(h, pk, 1)
        combo = dict(plain)
        for m, c in with_t.items():
            combo[m] = combo.get(m, 0) - c
        polys.append(combo)
    terms = eng.groebner(polys, pk, order)
    tfield = ring.num_vars
    gens = []
    for t in terms:
        if all(pk.exponent(m, tfield) == 0 for m, _ in t):
            gens.append(Polynomial._raw(ring, {pk.unpack(m)[:-1]: Fraction(int(c)) for m, c in t}))
    return Ideal(gens, ring)


def colon(ideal: Ideal, g: Polynomial) -> Ideal:
    """I : g."""
    if g.is_zero():
        raise InputError("colon by the zero polynomial")
    ring = ideal.ring
    if not g.is_homogeneous()[0]:
        raise NonHomogeneousError("colon by a non-homogeneous polynomial")
    inter = ideal_intersection(ideal, Ideal([g], ring))
    return Ideal([h.exact_divide(g) for h in inter.generators], ring)


def _saturate_variable(ideal: Ideal, i: int) -> tuple[Ideal, GroebnerBasis]:
    """I : x_i^oo via a grevlex basis with x_i moved to the last position.

    For homogeneous I and x_i the smallest variable, dividing each basis
    element by its largest x_i power gives a basis of the saturation.
    """
    ring = ideal.ring
    last = ring.num_vars - 1
    perm = list(range(ring.num_vars))
    perm[i], perm[last] = perm[last], perm[i]
    if i == last:
        moved = ideal
    else:
        moved = Ideal([g.permute_variables(perm) for g in ideal.generators], ring)
    gb = moved.groebner_basis()
    gens = []
    for g in gb.elements:
        k = min(m[last] for m in g.terms)
        if k:
            shift = [0] * ring.num_vars
            shift[last] = -k
            g = g.mul_monomial(tuple(shift))
        gens.append(g.permute_variables(perm) if i != last else g)
    return Ideal(gens, ring), gb


def colon_saturate_by(ideal: Ideal, g: Polynomial) -> Ideal:
    """I : g^oo."""
    if g.is_zero():
        raise InputError("saturation by the zero polynomial")
    ring = ideal.ring
    if len(g) == 1:
        (m, _), = g.terms.items()
        current = ideal
        for i, e in enumerate(m):
            if e:
                current, _ = _saturate_variable(current, i)
        return current
    current = ideal
    while True:
        nxt = colon(current, g)
        if nxt.is_subset(current):
            return current
        current = nxt


def _monomial_ideal_dim(gens: Sequence[tuple], nvars: int) -> int:
    supports = {frozenset(i for i, e in enumerate(m) if e) for m in gens}
    # drop non-minimal supports
    minimal = [s for s in supports if not any(t < s for t in supports)]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in minimal):
                return size
    return -1


def krull_dimension(ideal: Ideal) -> int:
    """Krull dimension of R/I from the leading-term ideal; -1 for the unit ideal."""
    gb = ideal.groebner_basis()
    return _monomial_ideal_dim(gb.leading_monomials(), ideal.ring.num_vars)


def _hyperplane_misses_scheme(gb: GroebnerBasis, i: int, nvars: int) -> bool:
    # x_i is last in the basis order: in(I + x_i) = in(I) + (x_i)
    lms = gb.leading_monomials()
    e = [0] * nvars
    e[i] = 1
    return _monomial_ideal_dim(lms + [tuple(e)], nvars) <= 0


def saturation_irrelevant(ideal: Ideal) -> Ideal:
    """I : (x0, ..., xn)^oo.

    If some coordinate hyperplane x_i = 0 misses V(I), then I^sat = I : x_i^oo,
    which costs one Groebner basis. Otherwise intersect all I : x_i^oo.
    """
    ring = ideal.ring
    nv = ring.num_vars
    if ideal.is_zero():
        return ideal
    if ideal.is_unit():
        return Ideal.unit(ring)
    parts = []
    for i in reversed(range(nv)):
        sat_i, moved_gb = _saturate_variable(ideal, i)
        if _hyperplane_misses_scheme(moved_gb, nv - 1, nv):
            return Ideal(sat_i.groebner_basis().elements, ring)
        parts.append(sat_i)
    result = parts[0]
    for p in parts[1:]:
        result = ideal_intersection(result, p)
    return Ideal(result.groebner_basis().elements, ring)
