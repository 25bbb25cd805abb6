import itertools
import random
from fractions import Fraction

import pytest
import sympy

from satjac.errors import DimensionMismatch, InputError, InternalInconsistency
from satjac.hilbert import (CIData, DefectProfile, ci_defect, ci_hilbert, ci_last_defect_degree,
                            ci_length, defect_profile, first_repeat_degree, hilbert_function,
                            hilbert_numerator, hilbert_profile, scheme_length)
from satjac.ideals import Ideal, ideal_intersection, krull_dimension, saturation_irrelevant
from satjac.polyring import FormSampler, Polynomial, RingContext, graded_dim, parse_poly

R3 = RingContext(3)


def P(text, ring=R3):
    return parse_poly(text, ring)


def standard_monomial_count(lms, ring, e):
    return sum(1 for m in ring.monomials(e)
               if not any(all(a <= b for a, b in zip(l, m)) for l in lms))


def point_ideal(points, ring):
    """Ideal of distinct points of P^n, as an intersection of linear ideals."""
    result = None
    for p in points:
        piv = next(i for i, c in enumerate(p) if c)
        gens = []
        for j in range(ring.num_vars):
            if j != piv:
                # p[piv]*x_j - p[j]*x_piv
                gens.append(ring.variable(j).scale(p[piv]) - ring.variable(piv).scale(p[j]))
        ideal = Ideal(gens, ring)
        result = ideal if result is None else ideal_intersection(result, ideal)
    return result


def evaluation_rank(points, ring, e):
    """dim of the span of degree-e monomials evaluated at the points."""
    rows = [[Fraction(1) * sympy.prod([c ** k for c, k in zip(p, m)]) for m in ring.monomials(e)]
            for p in points]
    return sympy.Matrix(rows).rank()


def random_points(rng, count):
    seen = set()
    out = []
    while len(out) < count:
        p = tuple(rng.randint(-3, 3) for _ in range(3))
        if not any(p):
            continue
        g = 0
        for c in p:
            g = sympy.igcd(g, c)
        lead = next(c for c in p if c)
        key = tuple(c * (1 if lead > 0 else -1) // g for c in p)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


class TestNumerator:
    def test_brute_force(self):
        rng = random.Random(2)
        for _ in range(200):
            nv = rng.randint(2, 4)
            ring = RingContext(nv)
            gens = [tuple(rng.randint(0, 3) for _ in range(nv)) for _ in range(rng.randint(1, 5))]
            gens = [g for g in gens if any(g)] or [(1,) + (0,) * (nv - 1)]
            numer = hilbert_numerator(gens)
            for e in range(8):
                val = sum(c * graded_dim(ring, e - j) for j, c in enumerate(numer))
                assert val == standard_monomial_count(gens, ring, e)

    def test_recursion_terminates_on_pure_powers(self):
        # mixed monomials sharing a variable with a pure power
        assert hilbert_numerator([(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0)])


class TestHilbertFunction:
    def test_zero_ideal(self):
        assert hilbert_function(Ideal([], R3), 4) == 15

    def test_hyperplane(self):
        assert hilbert_function(Ideal([P("x0")], R3), 3) == 4

    def test_ci_23(self):
        s = FormSampler(1)
        ideal = Ideal([s.form(R3, 2), s.form(R3, 3)], R3)
        # coefficients of (1-t^2)(1-t^3)/(1-t)^3, expanded with sympy
        assert [hilbert_function(ideal, e) for e in range(6)] == [1, 3, 5, 6, 6, 6]
        assert scheme_length(ideal) == 6
        assert first_repeat_degree(ideal) == 3

    def test_complement(self):
        s = FormSampler(6)
        ideal = Ideal([s.form(R3, 2), s.form(R3, 4), P("x0*x1^2")], R3)
        gb = ideal.groebner_basis()
        for e in range(9):
            lms = gb.leading_monomials()
            in_ideal = graded_dim(R3, e) - standard_monomial_count(lms, R3, e)
            assert hilbert_function(ideal, e) + in_ideal == graded_dim(R3, e)

    def test_profile(self):
        s = FormSampler(1)
        prof = hilbert_profile(Ideal([s.form(R3, 2), s.form(R3, 3)], R3), 6)
        assert prof.stable_value == 6 and prof.stabilization_degree == 3


class TestSchemeLength:
    def test_one_point(self):
        assert scheme_length(Ideal([P("x0"), P("x1")], R3)) == 1

    def test_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            scheme_length(Ideal([P("x0")], R3))

    def test_torus_sextic(self, torus_sextic):
        from satjac.ideals import jacobian_ideal
        F, _ = torus_sextic
        sat = saturation_irrelevant(jacobian_ideal(F))
        assert scheme_length(sat) == 12


class TestDefects:
    def test_ci_34(self):
        s = FormSampler(21)
        ideal = Ideal([s.form(R3, 3), s.form(R3, 4)], R3)
        prof = defect_profile(ideal, 8)
        assert prof.xi == 12
        assert prof.defect(4) == 1 and prof.defect(5) == 0
        assert prof.last_positive_degree == 4

    def test_one_point(self):
        prof = defect_profile(Ideal([P("x0"), P("x1")], R3), 5)
        assert all(prof.defect(e) == 0 for e in range(6))

    def test_segre_m2_jsat(self, segre_m2):
        from satjac.ideals import jacobian_ideal
        F, _ = segre_m2
        prof = defect_profile(saturation_irrelevant(jacobian_ideal(F)), 14)
        assert prof.defect(11) == 1 and prof.defect(12) == 0

    def test_monotone_on_point_sets(self):
        rng = random.Random(5)
        for _ in range(20):
            pts = random_points(rng, rng.randint(1, 8))
            ideal = point_ideal(pts, R3)
            prof = defect_profile(ideal, 9)
            assert prof.xi == len(pts)
            vals = [prof.defect(e) for e in range(10)]
            assert all(a >= b for a, b in zip(vals, vals[1:]))
            for e in range(5):
                assert prof.h(e) == evaluation_rank(pts, R3, e)

    def test_build_rejects_inconsistent(self):
        with pytest.raises(InternalInconsistency):
            DefectProfile.build(3, {0: 1, 1: 4}, 1)
        with pytest.raises(InternalInconsistency):
            DefectProfile.build(3, {0: 2, 1: 1}, 1)

    def test_out_of_range(self):
        prof = DefectProfile.build(6, {0: 1, 1: 3}, 3)
        with pytest.raises(InputError):
            prof.defect(2)
        assert prof.defect(7) == 0 and prof.defect(-1) == 6

    def test_rows_roundtrip(self):
        s = FormSampler(21)
        prof = defect_profile(Ideal([s.form(R3, 3), s.form(R3, 4)], R3), 6)
        again = DefectProfile.from_rows(prof.xi, prof.rows(), prof.stabilization_degree)
        assert again == prof


class TestCIOracle:
    def test_values(self):
        assert ci_hilbert(CIData((2, 3), 3), 4) == 6
        assert [ci_hilbert(CIData((3, 4), 3), e) for e in range(7)] == [1, 3, 6, 9, 11, 12, 12]
        assert ci_hilbert(CIData((3, 4), 3), 4) < 12 and ci_hilbert(CIData((3, 4), 3), 5) == 12

    def test_hypersurface(self):
        # one form of degree d in 3 variables: h(e) = d*e - d(d-3)/2 for e >= d - 1
        for d in (2, 3, 5):
            for e in range(d, d + 5):
                assert ci_hilbert(CIData((d,), 3), e) == d * e - d * (d - 3) // 2

    def test_last_defect_degree(self):
        assert ci_last_defect_degree(CIData((3, 4), 3)) == 4
        assert ci_last_defect_degree(CIData((2, 3), 3)) == 2
        with pytest.raises(DimensionMismatch):
            ci_last_defect_degree(CIData((2,), 3))

    def test_weighted_socle(self):
        # g_i of degree d*w_i: socle degree d*sum(w_i) - n - 1
        for d, ws in ((6, (Fraction(1, 2), Fraction(1, 3))), (12, (Fraction(1, 4), Fraction(1, 3)))):
            degs = tuple(int(d * w) for w in ws)
            assert ci_last_defect_degree(CIData(degs, 3)) == d * sum(ws) - 3

    def test_sympy_series(self):
        t = sympy.symbols("t")
        rng = random.Random(9)
        for _ in range(15):
            nv = rng.randint(2, 4)
            degs = tuple(rng.randint(1, 5) for _ in range(rng.randint(0, nv)))
            expr = sympy.prod([1 - t ** d for d in degs]) / (1 - t) ** nv
            ser = sympy.series(expr, t, 0, 12).removeO()
            for e in range(12):
                assert ci_hilbert(CIData(degs, nv), e) == ser.coeff(t, e)

    def test_groebner_agreement(self):
        rng = random.Random(13)
        s = FormSampler(77)
        for _ in range(10):
            nv = rng.choice([3, 4])
            ring = RingContext(nv)
            degs = tuple(rng.randint(1, 4) for _ in range(nv - 1))
            ideal = Ideal([s.form(ring, d) for d in degs], ring)
            ci = CIData(degs, nv)
            assert krull_dimension(ideal) == 1
            for e in range(ci_last_defect_degree(ci) + 3):
                assert hilbert_function(ideal, e) == ci_hilbert(ci, e)
            assert scheme_length(ideal) == ci_length(ci)
            assert ci_defect(ci, ci_last_defect_degree(ci) + 1) == 0
