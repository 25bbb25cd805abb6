"""Threshold rationals alpha(n,d,k), exceptional triples, and the hypersurface analyzer.

A k-th root of unity can be a zero of the Alexander polynomial of X only if
J^sat has defect in every degree up to alpha(n,d,k)*d - n - 1 (for
alpha > 1). The analyzer turns a computed defect profile into per-k
exclusions, spectrum bounds and the T-smoothness verdict.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd

from .errors import InputError, NonIsolatedError
from .hilbert import DefectProfile, defect_profile
from .ideals import Ideal, jacobian_ideal, krull_dimension, saturation_irrelevant
from .polyring import Polynomial, format_poly

SPEC_VERSION = "1.0"

NOT_APPLICABLE = "not-applicable"
EXCLUDED_PRIME_POWER = "excluded-prime-power"
EXCLUDED_BY_DEFECT = "excluded-by-defect"
EXCEPTIONAL = "exceptional-triple"
POSSIBLE = "possible"

T_SMOOTH = "T-smooth"
NOT_T_SMOOTH = "not-T-smooth"

HYPOTHESES = (
    "assumed, not verified: every singular point is semi-weighted homogeneous; "
    "irreducibility is taken from the --assert-irreducible flag"
)


def psi(k: int) -> int:
    """Largest m < k/2 with gcd(m, k) = 1."""
    if k <= 2:
        raise InputError("psi(k) needs k > 2")
    m = (k - 1) // 2
    while gcd(m, k) != 1:
        m -= 1
    return m


def alpha(n: int, d: int, k: int) -> Fraction:
    """Threshold rational in [n/2, (n+1)/2]; ``d`` does not enter the value."""
    if n < 2 or k < 1:
        raise InputError("alpha needs n >= 2 and k >= 1")
    even = n % 2 == 0
    if (even and k == 1) or (not even and k == 2):
        return Fraction(n, 2)
    if (even and k == 2) or (not even and k == 1):
        return Fraction(n + 1, 2)
    if not even:
        return Fraction(n + 1, 2) - Fraction(1, k)
    return Fraction(n, 2) + Fraction(psi(k), k)


def is_prime_power(k: int) -> bool:
    """True for p^r with p prime and r >= 1."""
    if k < 2:
        return False
    p = 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            return k == 1
        p += 1
    return True


def divisors(d: int) -> list[int]:
    return [k for k in range(1, d + 1) if d % k == 0]


def exceptional_case(n: int, d: int, k: int) -> int | None:
    """Case id 1..6 of the exceptional list, or None."""
    if n == 2 and d in (6, 12) and k == 6:
        return 1
    if n in (3, 4, 6) and d == 3 and k == 1:
        return 2
    if n in (3, 4, 5) and d == 3 and k == 3:
        return 3
    if n == 3 and d in (4, 6) and k == 2:
        return 4
    if n == 3 and d == 4 and k == 4:
        return 5
    if n == 4 and d == 4 and k == 1:
        return 6
    return None


@dataclass(frozen=True)
class TripleVerdict:
    n: int
    d: int
    k: int
    alpha: Fraction
    exceptional_case: int | None
    inequality_holds: bool
    certificate_degree: int | None
    not_applicable: bool = False
    zariski_prime_power: bool = False

    @property
    def excluded_by_standing_rules(self) -> bool:
        return self.not_applicable or self.zariski_prime_power

    def label(self) -> str:
        if self.not_applicable:
            return NOT_APPLICABLE
        if self.exceptional_case is not None:
            return f"exceptional case {self.exceptional_case}"
        if self.inequality_holds:
            return "inequality holds"
        if self.zariski_prime_power:
            return "prime power (excluded for irreducible plane curves)"
        return "inequality fails"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["alpha"] = str(self.alpha)
        return out


def classify_triple(n: int, d: int, k: int) -> TripleVerdict:
    if n < 2 or k < 1:
        raise InputError("need n >= 2 and k >= 1")
    if d < 1 or d % k:
        raise InputError(f"k = {k} does not divide d = {d}")
    a = alpha(n, d, k)
    ad = a * d
    cert = int(ad) - n - 1 if ad.denominator == 1 else None
    holds = (a - 1) * d >= n + 1
    na = d <= 2 or (n == 2 and k == 1)
    return TripleVerdict(
        n, d, k, a,
        exceptional_case=exceptional_case(n, d, k),
        inequality_holds=holds,
        certificate_degree=cert,
        not_applicable=na,
        zariski_prime_power=n == 2 and is_prime_power(k),
    )


def sweep_triples(n_max: int, d_max: int) -> list[TripleVerdict]:
    """Every (n, d, k) with 2 <= n <= n_max, 3 <= d <= d_max, k | d."""
    if n_max < 2 or d_max < 3:
        raise InputError("sweep needs n_max >= 2 and d_max >= 3")
    return [classify_triple(n, d, k)
            for n in range(2, n_max + 1)
            for d in range(3, d_max + 1)
            for k in divisors(d)]


def failing_set(verdicts) -> list[tuple[int, int, int]]:
    """Triples where the inequality fails outside the standing exclusions."""
    return sorted((v.n, v.d, v.k) for v in verdicts
                  if not v.inequality_holds and not v.excluded_by_standing_rules)


def symmetric_alpha_count(n: int, k: int) -> int:
    """#{n/2 + i/k in [n/2, (n+1)/2] : i >= 1, gcd(i, k) = 1}."""
    return sum(1 for i in range(1, k + 1)
               if gcd(i, k) == 1 and Fraction(i, k) <= Fraction(1, 2))


# spectrum bounds


@dataclass
class SpectrumBoundTable:
    """Upper bounds for n_alpha, alpha in (1, n] with d*alpha integral."""

    n: int
    d: int
    entries: dict[Fraction, int]
    alexander_degree_bound: int | None
    note: str = "alpha <= 1 is not bounded directly; only through n_alpha = n_(n-alpha)"

    def to_dict(self) -> dict:
        return {
            "entries": [{"alpha": str(a), "bound": b} for a, b in sorted(self.entries.items())],
            "alexander_degree_bound": self.alexander_degree_bound,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: dict, n: int, d: int) -> "SpectrumBoundTable":
        entries = {Fraction(e["alpha"]): e["bound"] for e in data["entries"]}
        return cls(n, d, entries, data["alexander_degree_bound"], data["note"])


def spectrum_bounds(defects: DefectProfile, n: int, d: int,
                    assert_irreducible: bool = False) -> SpectrumBoundTable:
    need = n * d - n - 1
    if need > defects.max_degree and need < defects.stabilization_degree:
        raise InputError(f"defect profile must reach degree {need}")
    entries = {}
    for j in range(d + 1, n * d + 1):
        a = Fraction(j, d)
        entries[a] = defects.defect(j - n - 1)
    # degree of the Alexander polynomial: sum over alpha in [0, n], folding
    # alpha <= 1 onto n - alpha
    total = 0
    for j in range(0, n * d + 1):
        a = Fraction(j, d)
        if a > 1:
            total += entries[a]
        elif n - a > 1:
            total += entries[n - a]
        elif n == 2 and a == 1 and assert_irreducible:
            # n_1 counts components beyond the first
            continue
        else:
            return SpectrumBoundTable(n, d, entries, None)
    return SpectrumBoundTable(n, d, entries, total)


# analyzer


@dataclass
class RootExclusion:
    k: int
    alpha: Fraction
    certificate_degree: int | None
    defect_at_certificate: int | None
    excluded_by_defect: bool
    excluded_prime_power: bool
    exceptional_case: int | None
    verdict: str

    def to_dict(self) -> dict:
        out = asdict(self)
        out["alpha"] = str(self.alpha)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RootExclusion":
        data = dict(data)
        data["alpha"] = Fraction(data["alpha"])
        return cls(**data)


@dataclass
class AnalysisReport:
    polynomial: str
    input_sha256: str
    n: int
    d: int
    isolated: bool
    smooth: bool
    xi: int
    defect_profile: list[dict]
    stabilization_degree: int
    defect_at_d: int
    t_smooth: str
    root_exclusions: dict[int, RootExclusion]
    spectrum_bounds: SpectrumBoundTable
    assert_irreducible: bool
    notes: list[str] = field(default_factory=list)

    def defect(self, e: int) -> int:
        for row in self.defect_profile:
            if row["e"] == e:
                return row["defect"]
        if self.smooth or e >= self.stabilization_degree:
            return 0
        if e < 0:
            return self.xi
        raise InputError(f"degree {e} outside the computed defect profile")

    def to_dict(self) -> dict:
        return {
            "spec_version": SPEC_VERSION,
            "polynomial": self.polynomial,
            "input_sha256": self.input_sha256,
            "n": self.n,
            "d": self.d,
            "isolated": self.isolated,
            "smooth": self.smooth,
            "xi": self.xi,
            "defect_profile": [dict(r) for r in self.defect_profile],
            "stabilization_degree": self.stabilization_degree,
            "defect_at_d": self.defect_at_d,
            "t_smooth": self.t_smooth,
            "root_exclusions": {str(k): v.to_dict() for k, v in sorted(self.root_exclusions.items())},
            "spectrum_bounds": self.spectrum_bounds.to_dict(),
            "assert_irreducible": self.assert_irreducible,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        if data.get("spec_version") != SPEC_VERSION:
            raise InputError(f"unsupported report version {data.get('spec_version')!r}")
        n, d = data["n"], data["d"]
        return cls(
            polynomial=data["polynomial"],
            input_sha256=data["input_sha256"],
            n=n,
            d=d,
            isolated=data["isolated"],
            smooth=data["smooth"],
            xi=data["xi"],
            defect_profile=[dict(r) for r in data["defect_profile"]],
            stabilization_degree=data["stabilization_degree"],
            defect_at_d=data["defect_at_d"],
            t_smooth=data["t_smooth"],
            root_exclusions={int(k): RootExclusion.from_dict(v) for k, v in data["root_exclusions"].items()},
            spectrum_bounds=SpectrumBoundTable.from_dict(data["spectrum_bounds"], n, d),
            assert_irreducible=data["assert_irreducible"],
            notes=list(data["notes"]),
        )


def _root_exclusion(n, d, k, profile, smooth, assert_irreducible) -> RootExclusion:
    a = alpha(n, d, k)
    ad = a * d
    cert = int(ad) - n - 1 if ad.denominator == 1 else None
    case = exceptional_case(n, d, k)
    if smooth:
        return RootExclusion(k, a, cert, 0 if cert is not None else None, False, False, case, NOT_APPLICABLE)
    dc = profile.defect(cert) if cert is not None else None
    by_defect = a > 1 and dc == 0
    prime_power = n == 2 and assert_irreducible and is_prime_power(k)
    if d <= 2 or (n == 2 and k == 1):
        verdict = NOT_APPLICABLE
    elif prime_power:
        verdict = EXCLUDED_PRIME_POWER
    elif by_defect:
        verdict = EXCLUDED_BY_DEFECT
    elif case is not None:
        verdict = EXCEPTIONAL
    else:
        verdict = POSSIBLE
    return RootExclusion(k, a, cert, dc, by_defect, prime_power, case, verdict)


def analyze(f: Polynomial, assert_irreducible: bool = False) -> AnalysisReport:
    """Defect profile of J^sat(f) and everything derived from it."""
    ring = f.ring
    n = ring.n
    J = jacobian_ideal(f)
    d = f.degree()
    text = format_poly(f)
    digest = hashlib.sha256(text.encode()).hexdigest()
    dim = krull_dimension(J)
    if dim >= 2:
        raise NonIsolatedError(f"singular locus has dimension {dim - 1} (cone dimension {dim})")
    smooth = dim <= 0
    notes = [HYPOTHESES]
    top = max(n * d - n - 1, d)
    if smooth:
        profile = DefectProfile.build(0, {e: 0 for e in range(top + 1)}, 0)
        rows = []
        notes.insert(0, "smooth hypersurface; analysis trivial")
    else:
        sat = saturation_irrelevant(J)
        profile = defect_profile(sat, top)
        rows = profile.rows()
    exclusions = {k: _root_exclusion(n, d, k, profile, smooth, assert_irreducible)
                  for k in divisors(d)}
    dd = profile.defect(d)
    bounds = spectrum_bounds(profile, n, d, assert_irreducible or smooth)
    if d <= 2:
        notes.append("degree <= 2: root exclusions not applicable")
    if n == 2 and not assert_irreducible and not smooth:
        notes.append("prime-power exclusions withheld: irreducibility not asserted")
    return AnalysisReport(
        polynomial=text,
        input_sha256=digest,
        n=n,
        d=d,
        isolated=True,
        smooth=smooth,
        xi=profile.xi,
        defect_profile=rows,
        stabilization_degree=profile.stabilization_degree,
        defect_at_d=dd,
        t_smooth=T_SMOOTH if dd == 0 else NOT_T_SMOOTH,
        root_exclusions=exclusions,
        spectrum_bounds=bounds,
        assert_irreducible=assert_irreducible,
        notes=notes,
    )


def render_report(report: AnalysisReport) -> str:
    """Stable plain-text layout of a report."""
    if report.smooth:
        return "smooth hypersurface; analysis trivial\n"
    lines = [
        f"polynomial: {report.polynomial}",
        f"n = {report.n}, d = {report.d}",
        f"isolated singularities: yes",
        f"xi (total Tjurina number): {report.xi}",
        "e      " + " ".join(f"{r['e']:>3}" for r in report.defect_profile),
        "h      " + " ".join(f"{r['h']:>3}" for r in report.defect_profile),
        "defect " + " ".join(f"{r['defect']:>3}" for r in report.defect_profile),
    ]
    if report.t_smooth == T_SMOOTH:
        lines.append(f"verdict: T-smooth (defect in degree d = {report.d} is 0)")
    else:
        lines.append(f"verdict: not T-smooth (defect in degree d = {report.d} is {report.defect_at_d})")
    lines.append("roots of unity zeta_k, k | d:")
    for k, r in sorted(report.root_exclusions.items()):
        extra = f" case {r.exceptional_case}" if r.exceptional_case is not None else ""
        cert = "-" if r.certificate_degree is None else str(r.certificate_degree)
        dc = "-" if r.defect_at_certificate is None else str(r.defect_at_certificate)
        lines.append(f"  k={k:<3} alpha={str(r.alpha):<6} cert_degree={cert:<4} defect={dc:<3} {r.verdict}{extra}")
    sb = report.spectrum_bounds
    lines.append("spectrum bounds n_alpha <= defect(alpha*d - n - 1):")
    for a, b in sorted(sb.entries.items()):
        if b:
            lines.append(f"  alpha={a}: {b}")
    if all(b == 0 for b in sb.entries.values()):
        lines.append("  all zero")
    deg = "unbounded" if sb.alexander_degree_bound is None else str(sb.alexander_degree_bound)
    lines.append(f"Alexander polynomial degree bound: {deg}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"
