"""Buchberger's algorithm over Q, run fraction-free on primitive integer polynomials.

Internally a monomial is one Python int: exponent ``e_j`` sits in a 16-bit
field at offset ``16*j`` (15 data bits plus a guard bit) and the total
degree sits in the field above the last variable. Multiplication is integer
addition, and ``a | b`` is a single masked subtraction.

Pair selection is the normal (sugar) strategy with Gebauer-Moeller pruning;
ties break on the order key of the lcm, then on insertion indices, so the
output never depends on hash order or timing.
"""

from __future__ import annotations

import contextvars
import heapq
from contextlib import contextmanager
from dataclasses import dataclass
from .errors import BudgetExceeded

try:
    from gmpy2 import gcd, mpz
except ImportError:  # pragma: no cover
    from math import gcd

    mpz = int

STRIDE = 16
FIELD = (1 << 15) - 1
CONTENT_EVERY = 8


@dataclass(frozen=True)
class Budget:
    """Caps on a single Groebner computation; ``None`` disables a cap."""

    max_spairs: int | None = 500_000
    max_degree: int | None = 200


UNBOUNDED = Budget(None, None)

_budget = contextvars.ContextVar("satjac_budget", default=Budget())


def current_budget() -> Budget:
    return _budget.get()


@contextmanager
def use_budget(budget: Budget):
    token = _budget.set(budget)
    try:
        yield budget
    finally:
        _budget.reset(token)


class Packing:
    """Bijection between exponent tuples and packed ints for ``nvars`` variables."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.degshift = STRIDE * nvars
        self.low = (1 << self.degshift) - 1
        self.guard = sum(1 << (STRIDE * j + 15) for j in range(nvars + 1))

    def pack(self, m) -> int:
        packed = 0
        deg = 0
        for j, e in enumerate(m):
            packed |= e << (STRIDE * j)
            deg += e
        if deg > FIELD:
            raise BudgetExceeded(f"monomial degree {deg} exceeds the packed range")
        return packed | (deg << self.degshift)

    def unpack(self, packed: int) -> tuple:
        return tuple((packed >> (STRIDE * j)) & FIELD for j in range(self.nvars))

    def degree(self, packed: int) -> int:
        return packed >> self.degshift

    def exponent(self, packed: int, j: int) -> int:
        return (packed >> (STRIDE * j)) & FIELD

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        out = 0
        deg = 0
        for j in range(self.nvars):
            s = STRIDE * j
            x = (a >> s) & FIELD
            y = (b >> s) & FIELD
            if y > x:
                x = y
            out |= x << s
            deg += x
        return out | (deg << self.degshift)


class Grevlex:
    name = "grevlex"

    def __init__(self, pk: Packing):
        self.pk = pk
        self._low = pk.low
        self._shift = pk.degshift

    def key(self, m: int) -> int:
        # (deg << shift) - packed exponents: smaller trailing exponents win ties
        return m - 2 * (m & self._low)

    def grade(self, m: int) -> int:
        return m >> self._shift


class EliminateLast:
    """Block order: exponent of the last variable first, then grevlex on the rest.

    The grading gives the last variable weight zero, so ideals like
    ``t*I + (1 - t)*J`` with homogeneous ``I, J`` stay homogeneous.
    """

    name = "elim-last"

    def __init__(self, pk: Packing):
        self.pk = pk
        self._tshift = STRIDE * (pk.nvars - 1)
        self._rest = (1 << self._tshift) - 1
        self._dshift = pk.degshift

    def key(self, m: int) -> int:
        et = (m >> self._tshift) & FIELD
        deg = m >> self._dshift
        return (et << (self._dshift + STRIDE)) + ((deg - et) << self._dshift) - (m & self._rest)

    def grade(self, m: int) -> int:
        return (m >> self._dshift) - ((m >> self._tshift) & FIELD)


class _Elt:
    __slots__ = ("lm", "lc", "tail", "sugar")

    def __init__(self, terms, sugar):
        self.lm, self.lc = terms[0]
        self.tail = terms[1:]
        self.sugar = sugar

    def terms(self):
        return [(self.lm, self.lc)] + self.tail


def to_coeffs(terms: dict) -> dict:
    """Switch integer coefficients to the fast big-integer type."""
    return {m: mpz(c) for m, c in terms.items()}


def primitive(terms: dict) -> dict:
    """Divide out the content; the caller fixes the sign."""
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return terms
    if g > 1:
        return {m: c // g for m, c in terms.items()}
    return terms


def sort_terms(terms: dict, order) -> list:
    key = order.key
    items = sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)
    if items and items[0][1] < 0:
        items = [(m, -c) for m, c in items]
    return items


def _find_reducer(m, basis, guard):
    for g in basis:
        lm = g.lm
        if ((m | guard) - lm) & guard == guard:
            return g
    return None


def reduce_full(f: dict, basis, pk: Packing, order) -> tuple[dict, int]:
    """Fully reduce ``f`` by ``basis``.

    Returns ``(r, mult)`` with ``mult * f - r`` in the ideal of ``basis``;
    ``r`` has no term divisible by a leading monomial of ``basis``.
    """
    key = order.key
    guard = pk.guard
    f = dict(f)
    heap = [(-key(m), m) for m in f]
    heapq.heapify(heap)
    rem = []
    mult = 1
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        g = _find_reducer(m, basis, guard) if basis else None
        if g is None:
            rem.append((m, c, mult))
            continue
        u = m - g.lm
        a = g.lc
        d = gcd(a, c)
        if d != 1:
            a //= d
            c //= d
        if a != 1:
            mult *= a
            for k in f:
                f[k] *= a
        for gm, gc in g.tail:
            mm = u + gm
            v = f.get(mm)
            if v is None:
                f[mm] = -c * gc
                heapq.heappush(heap, (-key(mm), mm))
            else:
                v -= c * gc
                if v:
                    f[mm] = v
                else:
                    del f[mm]
    out = {}
    for m, c, at in rem:
        out[m] = c * (mult // at) if at != mult else c
    return out, mult


def _top_reduce(f: dict, basis, pk: Packing, order) -> dict:
    """Reduce until the leading term is irreducible (tails untouched)."""
    key = order.key
    guard = pk.guard
    steps = 0
    while f:
        m = max(f, key=key)
        g = _find_reducer(m, basis, guard)
        if g is None:
            return f
        steps += 1
        if steps % CONTENT_EVERY == 0:
            f = primitive(f)
        c = f.pop(m)
        u = m - g.lm
        a = g.lc
        d = gcd(a, c)
        if d != 1:
            a //= d
            c //= d
        if a != 1:
            for k in f:
                f[k] *= a
        for gm, gc in g.tail:
            mm = u + gm
            v = f.get(mm, 0) - c * gc
            if v:
                f[mm] = v
            else:
                f.pop(mm, None)
    return f


def _spoly(p: _Elt, q: _Elt, lcm_pq: int) -> dict:
    up = lcm_pq - p.lm
    uq = lcm_pq - q.lm
    d = gcd(p.lc, q.lc)
    cp = q.lc // d
    cq = p.lc // d
    out = {}
    for m, c in p.tail:
        out[up + m] = cp * c
    for m, c in q.tail:
        mm = uq + m
        v = out.get(mm, 0) - cq * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


@dataclass
class EngineStats:
    pairs_processed: int = 0
    zero_reductions: int = 0
    basis_size: int = 0
    max_degree: int = 0


def groebner(polys: list[dict], pk: Packing, order, budget: Budget | None = None,
             stats: EngineStats | None = None) -> list[list]:
    """Reduced Groebner basis of the integer polynomials ``polys``.

    Each input is a dict packed-monomial -> int. Output elements are
    primitive with positive leading coefficient, as term lists in
    decreasing order, sorted by increasing leading monomial.
    """
    if budget is None:
        budget = current_budget()
    if stats is None:
        stats = EngineStats()
    key = order.key
    grade = order.grade
    lcm = pk.lcm
    divides = pk.divides

    elts: list[_Elt] = []
    active: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    queue: list = []

    def sugar_of(terms):
        return max(grade(m) for m in terms)

    def add(terms_dict, sugar):
        terms = sort_terms(primitive(terms_dict), order)
        h = len(elts)
        elt = _Elt(terms, sugar)
        elts.append(elt)
        lm_h = elt.lm
        cand = [(g, lcm(lm_h, elts[g].lm)) for g in active]
        kept = []
        for idx, (g1, l1) in enumerate(cand):
            if l1 == lm_h + elts[g1].lm:
                kept.append((g1, l1))
                continue
            dominated = False
            for g2, l2 in cand[idx + 1:]:
                if divides(l2, l1):
                    dominated = True
                    break
            if not dominated:
                for g2, l2 in kept:
                    if divides(l2, l1):
                        dominated = True
                        break
            if not dominated:
                kept.append((g1, l1))
        for pair, (l12, _) in list(pairs.items()):
            if divides(lm_h, l12):
                i, j = pair
                if lcm(elts[i].lm, lm_h) != l12 and lcm(elts[j].lm, lm_h) != l12:
                    del pairs[pair]
        for g1, l1 in kept:
            if l1 == lm_h + elts[g1].lm:
                continue
            p, q = elts[g1], elt
            s = max(p.sugar + grade(l1 - p.lm), q.sugar + grade(l1 - q.lm))
            pair = (g1, h)
            sort_key = (s, key(l1), g1, h)
            pairs[pair] = (l1, sort_key)
            heapq.heappush(queue, (sort_key, pair))
        active[:] = [g for g in active if not divides(lm_h, elts[g].lm)] + [h]

    inputs = []
    for p in polys:
        if p:
            inputs.append(to_coeffs(p))
    # smallest generators first keeps early reductions cheap
    inputs.sort(key=lambda p: (sugar_of(p), key(max(p, key=key)), len(p)))
    for p in inputs:
        basis = [elts[g] for g in active]
        r, _ = reduce_full(primitive(p), basis, pk, order)
        if r:
            add(r, sugar_of(p))
            if elts[-1].lm == 0:
                return [[(0, 1)]]

    max_pairs = budget.max_spairs
    max_deg = budget.max_degree
    while queue:
        sort_key, pair = heapq.heappop(queue)
        entry = pairs.pop(pair, None)
        if entry is None:
            continue
        l12 = entry[0]
        sugar = sort_key[0]
        stats.pairs_processed += 1
        if max_pairs is not None and stats.pairs_processed > max_pairs:
            raise BudgetExceeded(f"S-pair budget of {max_pairs} exceeded")
        if max_deg is not None and sugar > max_deg:
            raise BudgetExceeded(f"degree budget of {max_deg} exceeded (sugar {sugar})")
        stats.max_degree = max(stats.max_degree, sugar)
        i, j = pair
        s = _spoly(elts[i], elts[j], l12)
        if not s:
            stats.zero_reductions += 1
            continue
        basis = [elts[g] for g in active]
        s = _top_reduce(s, basis, pk, order)
        if not s:
            stats.zero_reductions += 1
            continue
        r, _ = reduce_full(s, basis, pk, order)
        add(r, sugar)
        if elts[-1].lm == 0:
            stats.basis_size = 1
            return [[(0, 1)]]

    basis = sorted((elts[g] for g in active), key=lambda e: key(e.lm))
    reduced = []
    for idx, e in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = dict(e.tail)
        r, mult = reduce_full(tail, others, pk, order) if tail else ({}, 1)
        r[e.lm] = e.lc * mult
        terms = sort_terms(primitive(r), order)
        new = _Elt(terms, e.sugar)
        basis[idx] = new
        reduced.append(terms)
    stats.basis_size = len(reduced)
    return reduced


def elts_from_terms(term_lists: list[list]) -> list[_Elt]:
    return [_Elt(t, 0) for t in term_lists]
