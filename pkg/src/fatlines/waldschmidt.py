"""Initial degrees of symbolic powers of general lines and Waldschmidt constants.

For the ideal ``I`` of ``s`` general lines, ``alpha(I^(m))`` is the least
degree of a surface vanishing to order ``m`` along every line, and the
Waldschmidt constant is ``inf_m alpha(I^(m)) / m``.

Values from sampling random lines are evidence; the bounds for six lines
coming from Todd's transformation are exact lattice arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from scipy.optimize import bisect

from . import field as ff
from .divisors import is_obviously_noneffective, proper_transform_symmetric
from .field import DEFAULT_PRIME
from .interpolation import (
    DEFAULT_BUDGET_COLS,
    DEFAULT_SEEDS,
    RANDOM_POSITION_CAVEAT,
    BudgetExceeded,
    FatFlatSystem,
    analyze,
    check_budget,
    conditions_matrix,
    sample_lines,
    virtual_dimension,
)

KNOWN_VALUES = {
    1: Fraction(1),
    2: Fraction(2),
    3: Fraction(2),
    4: Fraction(8, 3),
    5: Fraction(10, 3),
    6: Fraction(72, 19),
}
SEVEN_LINES_EXPECTED = Fraction(21, 5)
CONJECTURE_TOL = 1e-12


def known_table() -> dict[int, Fraction]:
    return dict(KNOWN_VALUES)


def conjectured_value(s: int) -> Fraction | float:
    """Expected constant for ``s >= 7`` lines.

    For ``s >= 8`` this is the largest real root of ``t^3 - 3 s t + 2 s``,
    which is the unique root in ``[sqrt(s), sqrt(3 s)]``.
    """
    if s < 7:
        raise ValueError(f"s={s} has a known value; use known_table()")
    if s == 7:
        return SEVEN_LINES_EXPECTED
    return bisect(
        lambda t: t**3 - 3 * s * t + 2 * s,
        math.sqrt(s),
        math.sqrt(3 * s),
        xtol=CONJECTURE_TOL,
        rtol=4 * 2.0**-52,
        maxiter=200,
    )


def _alpha_for_lines(lines, m: int, prime: int, budget_cols: int | None) -> int:
    s = len(lines)
    mults = (m,) * s
    lo = m - 1  # below degree m nothing vanishes to order m
    hi = m
    while virtual_dimension(FatFlatSystem(hi, mults)) <= 0:
        hi += 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        check_budget(mid, budget_cols)
        rows = conditions_matrix(lines, mults, mid)
        if ff.kernel_dimension(rows, prime) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def alpha_symbolic(
    s: int,
    m: int,
    prime: int = DEFAULT_PRIME,
    seeds=DEFAULT_SEEDS,
    budget_cols: int | None = DEFAULT_BUDGET_COLS,
) -> int:
    """Least ``d`` with ``L_d(m^s)`` nonempty, agreed over all seeds.

    Nonemptiness is monotone in ``d`` for a fixed configuration, so each
    seed is a bisection between ``m - 1`` and the first degree of positive
    virtual dimension. A special configuration can only lower the answer,
    so the consensus is the largest per-seed value.
    """
    if s < 1 or m < 1:
        raise ValueError(f"need s >= 1 and m >= 1, got s={s}, m={m}")
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    prime = ff.PrimeModulus(prime).p
    return max(
        _alpha_for_lines(sample_lines(s, prime, seed), m, prime, budget_cols) for seed in seeds
    )


@dataclass
class UpperBoundCertificate:
    value: Fraction
    verified: bool
    surface_degree: int
    total_degree: int
    order_per_line: int
    report: object

    @property
    def status(self) -> str:
        return "verified" if self.verified else "bound unverified"


def waldschmidt_upper_bound_6lines(prime: int = DEFAULT_PRIME, seeds=DEFAULT_SEEDS) -> UpperBoundCertificate:
    """Bound ``72/19`` from six degree-12 surfaces, each of order 4 on one line and 3 on the rest.

    Their sum has degree 72 and order 5*3 + 4 = 19 along every line.
    """
    report = analyze(FatFlatSystem(12, (4, 3, 3, 3, 3, 3)), prime, seeds)
    surfaces = 6
    degree = surfaces * 12
    order = 4 + (surfaces - 1) * 3
    return UpperBoundCertificate(
        value=Fraction(degree, order),
        verified=report.consensus_actual >= 1,
        surface_degree=12,
        total_degree=degree,
        order_per_line=order,
        report=report,
    )


def lower_bound_witness(m: int):
    """Todd image of ``(72m - 1)H - 19m(E1 + ... + E6)``."""
    return proper_transform_symmetric("todd", 72 * m - 1, [19 * m] * 6)


def waldschmidt_lower_bound_6lines(m_max: int) -> Fraction:
    """Certify ``72/19`` as a lower bound by checking the witnesses for ``m = 1..m_max``.

    Each witness must have negative degree, so no surface of degree
    ``72m - 1`` has order ``19m`` along six general lines.
    """
    if m_max < 1:
        raise ValueError(f"m_max must be at least 1, got {m_max}")
    for m in range(1, m_max + 1):
        image = lower_bound_witness(m)
        if not is_obviously_noneffective(image):
            raise ArithmeticError(f"Todd image {image} for m={m} is not obviously non-effective")
    return Fraction(72, 19)


@dataclass
class WaldschmidtReport:
    s: int
    prime: int
    seeds: list[int]
    samples: list[tuple[int, int, Fraction]] = field(default_factory=list)
    upper_bound: Fraction | None = None
    upper_bound_source: str | None = None
    lower_bound: Fraction | None = None
    lower_bound_source: str | None = None
    exact: Fraction | None = None
    conjectured: Fraction | float | None = None
    caveats: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def q(v):
            if v is None:
                return None
            return str(v) if isinstance(v, Fraction) else v

        return {
            "s": self.s,
            "prime": self.prime,
            "seeds": list(self.seeds),
            "samples": [{"m": m, "alpha": a, "ratio": str(r)} for m, a, r in self.samples],
            "upper_bound": q(self.upper_bound),
            "upper_bound_source": self.upper_bound_source,
            "lower_bound": q(self.lower_bound),
            "lower_bound_source": self.lower_bound_source,
            "exact": q(self.exact),
            "conjectured": q(self.conjectured),
            "caveats": list(self.caveats),
            "notes": list(self.notes),
        }


def bound_report(
    s: int,
    m_max: int,
    prime: int = DEFAULT_PRIME,
    seeds=DEFAULT_SEEDS,
    budget_cols: int | None = DEFAULT_BUDGET_COLS,
    certify_m_max: int = 100,
) -> WaldschmidtReport:
    if s < 1:
        raise ValueError(f"s must be at least 1, got {s}")
    prime = ff.PrimeModulus(prime).p
    report = WaldschmidtReport(s=s, prime=prime, seeds=list(seeds))
    for m in range(1, m_max + 1):
        try:
            a = alpha_symbolic(s, m, prime, seeds, budget_cols)
        except BudgetExceeded as exc:
            report.notes.append(f"m={m} skipped: {exc}")
            continue
        report.samples.append((m, a, Fraction(a, m)))
    if report.samples:
        m, a, r = min(report.samples, key=lambda x: x[2])
        report.upper_bound = r
        report.upper_bound_source = f"sampled alpha(I^({m}))/{m} = {a}/{m} (evidence)"
        report.caveats.append(RANDOM_POSITION_CAVEAT)

    if s in KNOWN_VALUES:
        report.exact = KNOWN_VALUES[s]
    else:
        report.conjectured = conjectured_value(s)
        report.caveats.append("conjectured value, not certified")
        if s >= 8:
            t = report.conjectured
            report.notes.append(f"largest root of t^3 - {3 * s}t + {2 * s}; residual {abs(t**3 - 3 * s * t + 2 * s):.1e}")

    if s == 6:
        cert = waldschmidt_upper_bound_6lines(prime, seeds)
        if cert.verified and (report.upper_bound is None or cert.value <= report.upper_bound):
            report.upper_bound = cert.value
            report.upper_bound_source = (
                f"six degree-12 surfaces of type L_12(4,3^5) sum to degree {cert.total_degree} "
                f"with order {cert.order_per_line} on each line ({cert.status}, evidence)"
            )
        elif not cert.verified:
            report.notes.append("upper bound 72/19: bound unverified, L_12(4,3^5) empty in sample")
        report.lower_bound = waldschmidt_lower_bound_6lines(certify_m_max)
        report.lower_bound_source = (
            f"Todd image of (72m-1)H-19mE has H-coefficient -19 for m=1..{certify_m_max} (exact)"
        )
        w = lower_bound_witness(1)
        report.notes.append(
            f"Todd image for m=1 computed by linearity: {w}; the E-coefficient grows as m+5"
        )
    return report
