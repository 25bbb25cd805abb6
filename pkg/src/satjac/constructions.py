"""Seeded example families with closed-form predictions, and a verifier.

Every family draws its random forms from one ``FormSampler`` stream in a
fixed order. Retry ``attempt`` a uses Philox key ``seed | (a << 64)``, so a
reseeded construction is independent of the first one but still
reproducible from (seed, attempt).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm, prod

from .alexander import SPEC_VERSION, T_SMOOTH, NOT_T_SMOOTH, AnalysisReport, analyze
from .errors import GenericityError, HypothesisViolation, InputError
from .hilbert import CIData, ci_defect, ci_hilbert, ci_last_defect_degree, scheme_length
from .ideals import Ideal, krull_dimension
from .polyring import FormSampler, Polynomial, RingContext, format_poly, multisets, parse_poly, products

DEFAULT_SEED = 20240601

CONFIRMED = "confirmed"
RETRY = "RETRY-WITH-NEW-SEED"
MISMATCH = "mismatch"


@dataclass(frozen=True)
class WeightedHomogData:
    """f(gamma_1..gamma_n) of weighted degree 1 for rational weights w_i."""

    f: Polynomial
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.f.ring.num_vars:
            raise InputError("need one weight per variable of f")
        if any(not (0 < x < 1) for x in w):
            raise InputError("weights must lie strictly between 0 and 1")
        if self.f.is_zero():
            raise InputError("f must be nonzero")
        for m in self.f.terms:
            if sum(e * x for e, x in zip(m, w)) != 1:
                raise InputError(f"monomial {m} does not have weighted degree 1")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def v(self) -> int:
        return lcm(*(x.denominator for x in self.weights))

    @classmethod
    def parse(cls, text: str, weights) -> "WeightedHomogData":
        try:
            ws = tuple(Fraction(str(x).strip()) for x in weights)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad weight list: {exc}") from None
        return cls(parse_poly(text, RingContext(len(ws))), ws)


def cusp_data() -> WeightedHomogData:
    """gamma_1^2 + gamma_2^3 with weights (1/2, 1/3)."""
    return WeightedHomogData.parse("x0^2 + x1^3", ("1/2", "1/3"))


@dataclass
class ConstructionReport:
    family: str
    params: dict
    polynomial: str
    n: int
    degree: int
    seed: int
    attempt: int
    predicted_singular_count: int
    predicted_tjurina_total: int | None
    alpha_min: Fraction | None
    predicted_n_alpha_min: int | None
    predicted_defect_degree: int | None
    defect_through: int | None
    tsmooth_prediction: str | None
    jsat_ci_degrees: list[int] | None = None
    nonconstant_alexander: bool | None = None
    expected_dimension: int | None = None
    components: dict = field(default_factory=dict)
    point_ideal: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "spec_version": SPEC_VERSION,
            "family": self.family,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "polynomial": self.polynomial,
            "n": self.n,
            "degree": self.degree,
            "seed": self.seed,
            "attempt": self.attempt,
            "predicted_singular_count": self.predicted_singular_count,
            "predicted_tjurina_total": self.predicted_tjurina_total,
            "alpha_min": None if self.alpha_min is None else str(self.alpha_min),
            "predicted_n_alpha_min": self.predicted_n_alpha_min,
            "predicted_defect_degree": self.predicted_defect_degree,
            "defect_through": self.defect_through,
            "tsmooth_prediction": self.tsmooth_prediction,
            "jsat_ci_degrees": self.jsat_ci_degrees,
            "nonconstant_alexander": self.nonconstant_alexander,
            "expected_dimension": self.expected_dimension,
            "components": {k: self.components[k] for k in sorted(self.components)},
            "point_ideal": list(self.point_ideal),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConstructionReport":
        data = dict(data)
        if data.pop("spec_version", None) != SPEC_VERSION:
            raise InputError("unsupported construction report version")
        if data["alpha_min"] is not None:
            data["alpha_min"] = Fraction(data["alpha_min"])
        return cls(**data)

    def ring(self) -> RingContext:
        return RingContext(self.n + 1)


def _fmt(p: Polynomial) -> str:
    return format_poly(p)


def _composite_predictions(w: WeightedHomogData, m: int, gdeg: list[int]) -> dict:
    n, v = w.n, w.v
    d = m * v
    points = d ** n * prod(w.weights)
    a = sum(w.weights)
    ci = CIData(tuple(gdeg), n + 1)
    # J^sat is the complete intersection of the partials df/dgamma_i(g)
    jdeg = [int(d * (1 - x)) for x in w.weights]
    jci = CIData(tuple(jdeg), n + 1)
    return dict(
        degree=d,
        predicted_singular_count=int(points),
        predicted_tjurina_total=prod(jdeg),
        alpha_min=a,
        predicted_n_alpha_min=int(points) - ci_hilbert(ci, int(a * d) - n - 1),
        predicted_defect_degree=ci_last_defect_degree(ci),
        defect_through=int((n - a) * d) - n - 1,
        tsmooth_prediction=T_SMOOTH if ci_defect(jci, d) == 0 else NOT_T_SMOOTH,
        jsat_ci_degrees=jdeg,
        nonconstant_alexander=True,
    )


def _draw_g(w: WeightedHomogData, m: int, sampler: FormSampler, ring: RingContext):
    gdeg = [int(m * w.v * x) for x in w.weights]
    return gdeg, [sampler.form(ring, e) for e in gdeg]


def construct_composite(w: WeightedHomogData, m: int, seed: int = DEFAULT_SEED,
                        attempt: int = 0) -> tuple[Polynomial, ConstructionReport]:
    """F = f(g_1, ..., g_n) with general g_i of degree m*v*w_i."""
    if m < 1:
        raise InputError("m must be positive")
    if w.n < 2:
        raise InputError("need n >= 2")
    ring = RingContext(w.n + 1)
    sampler = FormSampler(seed, attempt)
    gdeg, gs = _draw_g(w, m, sampler, ring)
    F = w.f.substitute(gs)
    pred = _composite_predictions(w, m, gdeg)
    report = ConstructionReport(
        family="composite",
        params={"f": _fmt(w.f), "weights": [str(x) for x in w.weights], "m": m},
        polynomial=_fmt(F), n=w.n, seed=seed, attempt=attempt,
        components={f"g{i + 1}": _fmt(g) for i, g in enumerate(gs)},
        point_ideal=[_fmt(g) for g in gs],
        **pred,
    )
    return F, report


def construct_deformed(w: WeightedHomogData, m1: int, m2: int, seed: int = DEFAULT_SEED,
                       attempt: int = 0) -> tuple[Polynomial, ConstructionReport]:
    """F = sum_i h_i * M_i(g_1, ..., g_n) with general h_i of degree m2."""
    if m1 < 1 or m2 < 0:
        raise InputError("need m1 >= 1 and m2 >= 0")
    if w.n < 2:
        raise InputError("need n >= 2")
    n, v = w.n, w.v
    ring = RingContext(n + 1)
    sampler = FormSampler(seed, attempt)
    gdeg, gs = _draw_g(w, m1, sampler, ring)
    hs = [sampler.form(ring, m2) for _ in w.f.sorted_terms()]
    F = ring.zero()
    for h, (mono, c) in zip(hs, w.f.sorted_terms()):
        M = Polynomial(w.f.ring, {mono: c})
        F = F + h * M.substitute(gs)
    pred = _composite_predictions(w, m1, gdeg)
    if m2 > 0:
        threshold = deformed_threshold(w, m1)
        pred.update(
            degree=m1 * v + m2,
            # singularities stay of type f = 0 but J^sat is no longer a CI
            jsat_ci_degrees=None,
            predicted_n_alpha_min=None,
            nonconstant_alexander=None,
            tsmooth_prediction=NOT_T_SMOOTH if m2 <= threshold else None,
        )
    report = ConstructionReport(
        family="deformed",
        params={"f": _fmt(w.f), "weights": [str(x) for x in w.weights], "m1": m1, "m2": m2},
        polynomial=_fmt(F), n=n, seed=seed, attempt=attempt,
        components={**{f"g{i + 1}": _fmt(g) for i, g in enumerate(gs)},
                    **{f"h{i + 1}": _fmt(h) for i, h in enumerate(hs)}},
        point_ideal=[_fmt(g) for g in gs],
        **pred,
    )
    return F, report


def deformed_threshold(w: WeightedHomogData, m1: int) -> Fraction:
    """Largest m2 that still forces defect in degree m1*v + m2."""
    return (w.n - sum(w.weights) - 1) * m1 * w.v - w.n - 1


def cusp_predictions(m: int, a1: int, b1: int) -> dict:
    if m < 1:
        raise InputError("m must be positive")
    if a1 % 2 or b1 % 3:
        raise InputError("a1 must be even and b1 divisible by 3")
    if not (0 <= a1 <= 6 * m and 0 <= b1 <= 6 * m):
        raise InputError("need 0 <= a1, b1 <= 6m")
    a2 = 3 * m - a1 // 2
    b2 = 2 * m - b1 // 3
    not_tsmooth = Fraction(a1, 2) + Fraction(2 * b1, 3) <= m - 3
    return dict(a2=a2, b2=b2, not_tsmooth=not_tsmooth, nonconstant_alexander=a1 == 0 and b1 == 0)


def construct_cusps_glc(m: int, a1: int, b1: int, seed: int = DEFAULT_SEED,
                        attempt: int = 0) -> tuple[Polynomial, ConstructionReport]:
    """Degree-6m curve f1*f2^2 + g1*g2^3 with cusps along f2 = g2 = 0."""
    p = cusp_predictions(m, a1, b1)
    a2, b2 = p["a2"], p["b2"]
    ring = RingContext(3)
    sampler = FormSampler(seed, attempt)
    f1, f2, g1, g2 = (sampler.form(ring, e) for e in (a1, a2, b1, b2))
    F = f1 * f2 ** 2 + g1 * g2 ** 3
    report = ConstructionReport(
        family="cusps",
        params={"m": m, "a1": a1, "b1": b1},
        polynomial=_fmt(F), n=2, degree=6 * m, seed=seed, attempt=attempt,
        predicted_singular_count=a2 * b2,
        predicted_tjurina_total=2 * a2 * b2,
        alpha_min=Fraction(5, 6),
        predicted_n_alpha_min=None,
        predicted_defect_degree=a2 + b2 - 3,
        defect_through=None,
        tsmooth_prediction=NOT_T_SMOOTH if p["not_tsmooth"] else T_SMOOTH,
        jsat_ci_degrees=[a2, 2 * b2],
        nonconstant_alexander=p["nonconstant_alexander"],
        components={"f1": _fmt(f1), "f2": _fmt(f2), "g1": _fmt(g1), "g2": _fmt(g2)},
        point_ideal=[_fmt(f2), _fmt(g2)],
    )
    return F, report


def construct_rfold(ell: int, r: int, m: int, seed: int = DEFAULT_SEED,
                    attempt: int = 0) -> tuple[Polynomial, ConstructionReport]:
    """sum_i x_(ell+i) * h_i in P^(2 ell), h_i general in K^(r-1), K = (g, x_(ell+1..2 ell))."""
    if ell < 2 or r < 2 or m < 1:
        raise InputError("need ell >= 2, r >= 2, m >= 1")
    n = 2 * ell
    ring = RingContext(n + 1)
    sampler = FormSampler(seed, attempt)
    gs = [sampler.form(ring, m) for _ in range(ell)]
    K = gs + [ring.variable(ell + i) for i in range(1, ell + 1)]
    top = m * (r - 1)
    hs = []
    for _ in range(ell):
        h = ring.zero()
        for combo in multisets(range(len(K)), r - 1):
            piece = products((K[j] for j in combo), ring)
            h = h + sampler.form(ring, top - piece.degree()) * piece
        hs.append(h)
    F = ring.zero()
    for i, h in enumerate(hs):
        F = F + ring.variable(ell + 1 + i) * h
    d = top + 1
    through = ell * m * (r - 1) - ell - 1
    report = ConstructionReport(
        family="rfold",
        params={"ell": ell, "r": r, "m": m},
        polynomial=_fmt(F), n=n, degree=d, seed=seed, attempt=attempt,
        predicted_singular_count=m ** ell,
        # an ordinary node has Tjurina number 1; for r > 2 only the Milnor number is known
        predicted_tjurina_total=m ** ell if r == 2 else None,
        alpha_min=Fraction(n, r),
        predicted_n_alpha_min=None,
        predicted_defect_degree=None,
        defect_through=through,
        tsmooth_prediction=NOT_T_SMOOTH if through >= d else None,
        expected_dimension=expected_dimension("rfold", ell=ell, r=r, m=m),
        components={**{f"g{i + 1}": _fmt(g) for i, g in enumerate(gs)},
                    **{f"h{i + 1}": _fmt(h) for i, h in enumerate(hs)}},
        point_ideal=[_fmt(k) for k in K],
    )
    return F, report


def segre_tangent_excess(m: int) -> Fraction:
    """(m-1)(m-2)/2: codimension deficit of the Segre 6m^2-cusp family."""
    return Fraction((m - 1) * (m - 2), 2)


def expected_dimension(family: str, **params) -> int:
    """Closed-form expected dimensions.

    segre(m): plane sextics-of-degree-6m with 6m^2 cusps.
    hom_rfold(r, n, m): m^n ordinary r-fold points on a degree rm hypersurface in P^n.
    rfold(ell, r, m): the P^(2 ell) family of ``construct_rfold``.
    """
    if family == "segre":
        m = params["m"]
        return (6 * m + 1) * (6 * m + 2) // 2 - 1 - 12 * m * m
    if family == "hom_rfold":
        r, n, m = params["r"], params["n"], params["m"]
        return comb(m * r + n, n) - m ** n * (r - 1) ** n - 1
    if family == "rfold":
        ell, r, m = params["ell"], params["r"], params["m"]
        return comb(m * (r - 1) + 1 + 2 * ell, 2 * ell) - m ** ell * (r - 1) ** (2 * ell) - 1
    raise InputError(f"unknown family {family!r}")


def milnor_codimension(ell: int, r: int, m: int) -> int:
    return m ** ell * (r - 1) ** (2 * ell)


# verification


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    ok: bool


@dataclass
class VerificationResult:
    status: str
    checks: list[Check]
    analysis: AnalysisReport | None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "checks": [{"name": c.name, "expected": c.expected, "actual": c.actual, "ok": c.ok}
                       for c in self.checks],
            "analysis": None if self.analysis is None else self.analysis.to_dict(),
        }


def verify_construction(F: Polynomial, report: ConstructionReport) -> VerificationResult:
    """Replay the report's predictions through the analyzer."""
    ring = F.ring
    checks = []
    points = Ideal([parse_poly(t, ring) for t in report.point_ideal], ring)
    dim = krull_dimension(points)
    checks.append(Check("point scheme is zero-dimensional", 1, dim, dim == 1))
    if dim != 1:
        return VerificationResult(RETRY, checks, None)
    count = scheme_length(points)
    ok = count == report.predicted_singular_count
    checks.append(Check("point scheme length", report.predicted_singular_count, count, ok))
    if not ok:
        return VerificationResult(RETRY, checks, None)
    try:
        rep = analyze(F)
    except HypothesisViolation as exc:
        checks.append(Check("isolated singularities", True, str(exc), False))
        return VerificationResult(RETRY, checks, None)
    checks.append(Check("isolated singularities", True, rep.isolated, rep.isolated))
    if report.predicted_tjurina_total is not None:
        ok = rep.xi == report.predicted_tjurina_total
        checks.append(Check("total Tjurina number", report.predicted_tjurina_total, rep.xi, ok))
        if not ok:
            return VerificationResult(RETRY, checks, rep)
    status = CONFIRMED
    if report.jsat_ci_degrees is not None:
        ci = CIData(tuple(report.jsat_ci_degrees), ring.num_vars)
        exp = [ci_defect(ci, r["e"]) for r in rep.defect_profile]
        got = [r["defect"] for r in rep.defect_profile]
        ok = exp == got
        checks.append(Check("defect profile equals CI oracle", exp, got, ok))
        status = status if ok else MISMATCH
    if report.defect_through is not None and report.defect_through >= 0:
        e = report.defect_through
        got = rep.defect(e)
        ok = got > 0
        checks.append(Check(f"defect in degree {e} is positive", True, got, ok))
        status = status if ok else MISMATCH
    if report.tsmooth_prediction is not None:
        ok = rep.t_smooth == report.tsmooth_prediction
        checks.append(Check("T-smoothness", report.tsmooth_prediction, rep.t_smooth, ok))
        status = status if ok else MISMATCH
    return VerificationResult(status, checks, rep)


_BUILDERS = {
    "composite": construct_composite,
    "deformed": construct_deformed,
    "cusps": construct_cusps_glc,
    "rfold": construct_rfold,
}


def construct_verified(family: str, *args, seed: int = DEFAULT_SEED, retries: int = 3):
    """Build and verify, reseeding on genericity failures.

    Returns (F, report, verification) for the first attempt that is not
    RETRY-WITH-NEW-SEED; raises GenericityError after ``retries`` reseeds.
    """
    try:
        build = _BUILDERS[family]
    except KeyError:
        raise InputError(f"unknown family {family!r}") from None
    for attempt in range(retries + 1):
        F, report = build(*args, seed=seed, attempt=attempt)
        result = verify_construction(F, report)
        if result.status != RETRY:
            return F, report, result
    raise GenericityError(f"{family}: no generic draw in {retries + 1} attempts from seed {seed}")
