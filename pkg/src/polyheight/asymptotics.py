"""Symbolic approximation/dimension function families and series verdicts.

The symbolic universe is the power-log family

    psi(r) = c * r^(-tau) * log(e + r)^(-beta)      (approximation functions)
    f(r)   = r^s * log(1/r)^gamma                   (dimension functions)

with rational parameters.  Within this family every hypothesis of the
zero-infinity laws reduces to a closed-form parameter inequality, and the
series

    sum_r  r^n * f(psi(r^d))

has general term comparable to r^(n - d*tau*s) * (log r)^(gamma - beta*s),
so convergence is decided exactly: the sum converges iff the polynomial
exponent is < -1, or it equals -1 and the log exponent is < -1.

Numeric evaluation of psi and f (needed by the empirical module) is exact
Fraction arithmetic when the relevant exponents are integral and the log
factors are absent; otherwise values are deterministic dyadic rationals
computed with mpmath at a declared working precision.  Verdicts never
depend on numeric evaluation.

Approximation functions may instead be backed by an explicit decreasing
table of (r, psi(r)) pairs; those are usable by the empirical machinery
but make every symbolic condition undecidable, so verdicts on table-backed
functions come out Inconclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .rational import rat, rat_str

# working precision (decimal digits) for non-exact power-log evaluation
APPROX_DPS = 40


def _to_mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)


def _mpf_to_frac(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError(f"non-finite value {x}")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _pow_frac(x: Fraction, e: Fraction) -> Fraction:
    """x**e for x > 0: exact for integral e, dyadic approximation otherwise."""
    if x <= 0:
        raise ValueError("power base must be positive")
    if e.denominator == 1:
        return x ** int(e)
    with mpmath.workdps(APPROX_DPS):
        return _mpf_to_frac(mpmath.power(_to_mpf(x), _to_mpf(e)))


class Outcome(enum.Enum):
    ZERO = "Zero"
    INFINITY = "Infinity"
    NOT_APPLICABLE = "NotApplicable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ApproxFunction:
    """psi(r) = c * r^(-tau) * log(e+r)^(-beta), or an explicit table.

    Invariant: decreasing on the naturals.  For the symbolic family that
    means tau > 0, or tau = 0 with beta >= 0; tables are checked entrywise.
    """

    c: Fraction = Fraction(1)
    tau: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    table: tuple[tuple[int, Fraction], ...] | None = None

    @staticmethod
    def power(tau, c=1, beta=0) -> "ApproxFunction":
        psi = ApproxFunction(rat(c), rat(tau), rat(beta))
        if psi.c <= 0:
            raise ValueError("psi scale c must be positive")
        if psi.tau < 0:
            raise ValueError("psi exponent tau must be >= 0")
        if psi.tau == 0 and psi.beta < 0:
            raise ValueError("psi must be decreasing: tau = 0 needs beta >= 0")
        return psi

    @staticmethod
    def from_table(entries) -> "ApproxFunction":
        tab = tuple(sorted((int(r), rat(v)) for r, v in entries))
        if not tab:
            raise ValueError("empty table")
        for (r1, v1), (r2, v2) in zip(tab, tab[1:]):
            if r1 == r2 or v2 > v1:
                raise ValueError("table must be decreasing with distinct r")
        if any(v <= 0 for _, v in tab):
            raise ValueError("table values must be positive")
        return ApproxFunction(table=tab)

    @property
    def is_table(self) -> bool:
        return self.table is not None

    @property
    def is_pure_power(self) -> bool:
        return self.table is None and self.beta == 0

    def growth_vanishes(self, d: int) -> bool | None:
        """Does r^d * psi(r) -> 0?  None when table-backed (undecidable)."""
        if self.is_table:
            return None
        return self.tau > d or (self.tau == d and self.beta > 0)

    def value(self, r: int | Fraction) -> Fraction:
        """psi(r); exact when possible, else dyadic at APPROX_DPS digits."""
        r = rat(r)
        if r <= 0:
            raise ValueError("psi is defined on positive arguments")
        if self.is_table:
            key = (r.numerator, r.denominator)
            for rr, v in self.table:
                if rr == r:
                    return v
            raise ValueError(f"r={rat_str(r)} not in table")
        if self.beta == 0:
            return self.c * _pow_frac(r, -self.tau)
        with mpmath.workdps(APPROX_DPS):
            val = (
                _to_mpf(self.c)
                * mpmath.power(_to_mpf(r), _to_mpf(-self.tau))
                * mpmath.power(mpmath.log(mpmath.e + _to_mpf(r)), _to_mpf(-self.beta))
            )
            return _mpf_to_frac(val)

    def value_upper(self, r: int | Fraction) -> Fraction:
        """A rational upper bound for psi(r); exact when value() is exact."""
        v = self.value(r)
        if self.is_table or (self.beta == 0 and self.tau.denominator == 1):
            return v
        return v * (Fraction(2**30 + 1, 2**30))

    def cmp(self, r: int | Fraction, x: Fraction) -> int:
        """Exact sign of x - psi(r) for pure-power psi (beta = 0).

        Comparison is done by cross-powering, so it is exact for any
        rational tau; log-factor functions are refused because the
        comparison would be transcendental.
        """
        if not self.is_pure_power:
            raise ValueError("exact comparison needs a pure power psi (beta = 0)")
        r = rat(r)
        if x < 0:
            return -1
        # x ? c * r^(-u/w)  <=>  x^w * r^u ? c^w   (all quantities positive)
        u, w = self.tau.numerator, self.tau.denominator
        lhs = x**w * r**u
        rhs = self.c**w
        return (lhs > rhs) - (lhs < rhs)

    def to_report(self) -> dict:
        if self.is_table:
            return {"family": "table", "entries": [[r, rat_str(v)] for r, v in self.table]}
        return {
            "family": "power-log",
            "c": rat_str(self.c),
            "tau": rat_str(self.tau),
            "beta": rat_str(self.beta),
        }


@dataclass(frozen=True)
class DimFunction:
    """f(r) = r^s * log(1/r)^gamma with s > 0 (increasing, f(0+) = 0)."""

    s: Fraction
    gamma: Fraction = Fraction(0)

    @staticmethod
    def power(s, gamma=0) -> "DimFunction":
        f = DimFunction(rat(s), rat(gamma))
        if f.s <= 0:
            raise ValueError("dimension function needs s > 0")
        return f

    def value(self, x: Fraction) -> Fraction:
        """f(x); exact when s is integral and gamma = 0."""
        x = rat(x)
        if x <= 0:
            raise ValueError("f is defined on positive arguments")
        if self.gamma == 0:
            return _pow_frac(x, self.s)
        if x >= 1:
            raise ValueError("log factor requires argument < 1")
        with mpmath.workdps(APPROX_DPS):
            val = mpmath.power(_to_mpf(x), _to_mpf(self.s)) * mpmath.power(
                mpmath.log(1 / _to_mpf(x)), _to_mpf(self.gamma)
            )
            return _mpf_to_frac(val)

    def to_report(self) -> dict:
        return {"s": rat_str(self.s), "gamma": rat_str(self.gamma)}


@dataclass(frozen=True)
class Condition:
    """One hypothesis: satisfied / violated / undecidable, with the reason."""

    satisfied: bool | None
    detail: str

    def to_report(self):
        status = {True: "satisfied", False: "violated", None: "inconclusive"}[self.satisfied]
        return {"status": status, "detail": self.detail}


# hypotheses the measure dichotomy needs; the growth condition is recorded
# alongside but only gates the intrinsic-equals-ambient conclusion
REQUIRED_CONDITIONS = (
    "psi_decreasing",
    "f_dimension_function",
    "f_growth",
    "f_doubling",
    "psi_compatibility",
)


@dataclass(frozen=True)
class HypothesisReport:
    conditions: dict[str, Condition]

    def required_ok(self, names=REQUIRED_CONDITIONS) -> bool | None:
        vals = [self.conditions[n].satisfied for n in names]
        if any(v is False for v in vals):
            return False
        if any(v is None for v in vals):
            return None
        return True

    def to_report(self) -> dict:
        return {name: cond.to_report() for name, cond in self.conditions.items()}


def validate_hypotheses(psi: ApproxFunction, f: DimFunction, n: int, d: int) -> HypothesisReport:
    """Decide each hypothesis by parameter inequalities (table psi: inconclusive)."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    s, gamma = f.s, f.gamma
    conds: dict[str, Condition] = {}

    if psi.is_table:
        conds["psi_decreasing"] = Condition(True, "table validated entrywise")
    elif psi.tau > 0:
        conds["psi_decreasing"] = Condition(True, f"tau = {rat_str(psi.tau)} > 0")
    elif psi.beta > 0:
        conds["psi_decreasing"] = Condition(True, "tau = 0, beta > 0: slow log decay")
    else:
        conds["psi_decreasing"] = Condition(True, "constant psi (tau = beta = 0): degenerate")

    conds["f_dimension_function"] = Condition(
        s > 0, f"s = {rat_str(s)} {'> 0' if s > 0 else '<= 0'}"
    )

    if s < n:
        note = " (eventually: power term dominates the log)" if gamma < 0 else ""
        conds["f_growth"] = Condition(True, f"s = {rat_str(s)} < n = {n}{note}")
    elif s == n and gamma > 0:
        conds["f_growth"] = Condition(True, f"s = n = {n} and gamma = {rat_str(gamma)} > 0")
    else:
        conds["f_growth"] = Condition(
            False, f"r^(-n) f(r) does not blow up: s = {rat_str(s)}, n = {n}, gamma = {rat_str(gamma)}"
        )

    conds["f_doubling"] = Condition(True, "power-log family: f(Cx)/f(x) -> C^s")

    if psi.is_table:
        conds["psi_compatibility"] = Condition(None, "table-backed psi: no symbolic form")
        conds["growth_condition"] = Condition(None, "table-backed psi: no symbolic form")
    else:
        conds["psi_compatibility"] = Condition(
            True, "power-log family: psi(delta*r)/psi(r) is bounded"
        )
        gv = psi.growth_vanishes(d)
        detail = f"tau = {rat_str(psi.tau)} vs d = {d}"
        conds["growth_condition"] = Condition(gv, detail)

    return HypothesisReport(conds)


@dataclass(frozen=True)
class Verdict:
    """Zero/Infinity dichotomy outcome plus the deciding exponents."""

    outcome: Outcome
    exponent: Fraction | None
    log_exponent: Fraction | None
    hypotheses: HypothesisReport
    note: str = ""

    def to_report(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "exponent": None if self.exponent is None else rat_str(self.exponent),
            "log_exponent": None if self.log_exponent is None else rat_str(self.log_exponent),
            "hypotheses": self.hypotheses.to_report(),
            "note": self.note,
        }


def _series_converges(exponent: Fraction, log_exponent: Fraction) -> bool:
    """Does sum r^exponent * (log r)^log_exponent converge?"""
    return exponent < -1 or (exponent == -1 and log_exponent < -1)


def series_verdict(psi: ApproxFunction, f: DimFunction, n: int, d: int) -> Verdict:
    """Zero/Infinity verdict for the Hausdorff f-measure series sum r^n f(psi(r^d))."""
    report = validate_hypotheses(psi, f, n, d)
    ok = report.required_ok()
    if psi.is_table or ok is None:
        return Verdict(Outcome.INCONCLUSIVE, None, None, report, "no symbolic form for psi")
    if not ok:
        return Verdict(Outcome.NOT_APPLICABLE, None, None, report, "hypotheses violated")
    exponent = n - d * psi.tau * f.s
    log_exponent = f.gamma - psi.beta * f.s
    if _series_converges(exponent, log_exponent):
        return Verdict(Outcome.ZERO, exponent, log_exponent, report)
    return Verdict(Outcome.INFINITY, exponent, log_exponent, report)


def classical_verdict(psi: ApproxFunction, f: DimFunction, n: int) -> Verdict:
    """Baseline ambient-space verdict: sum f(psi(r)) r^n.

    Covers the Hausdorff-measure dichotomy under the usual growth hypotheses
    on f, and the Lebesgue dichotomy in the boundary case f(r) = r^n (where
    the growth hypothesis fails but the measure law still holds).
    """
    report = validate_hypotheses(psi, f, n, 1)
    lebesgue_case = f.s == n and f.gamma == 0
    required = ("psi_decreasing", "f_dimension_function") if lebesgue_case else REQUIRED_CONDITIONS
    ok = report.required_ok(required)
    if psi.is_table or ok is None:
        return Verdict(Outcome.INCONCLUSIVE, None, None, report, "no symbolic form for psi")
    if not ok:
        return Verdict(Outcome.NOT_APPLICABLE, None, None, report, "hypotheses violated")
    exponent = n - psi.tau * f.s
    log_exponent = f.gamma - psi.beta * f.s
    note = "Lebesgue case f(r) = r^n" if lebesgue_case else ""
    if _series_converges(exponent, log_exponent):
        return Verdict(Outcome.ZERO, exponent, log_exponent, report, note)
    return Verdict(Outcome.INFINITY, exponent, log_exponent, report, note)


@dataclass(frozen=True)
class DimensionResult:
    """Value of the dimension formula (1+n)/(d*tau) with applicability flags."""

    n: int
    d: int
    tau: Fraction
    s: Fraction
    threshold: Fraction
    corollary_applicable: bool
    intrinsic_equals_ambient: bool

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "tau": rat_str(self.tau),
            "s": rat_str(self.s),
            "threshold": rat_str(self.threshold),
            "applicable": self.corollary_applicable,
            "intrinsic_equals_ambient": self.intrinsic_equals_ambient,
        }


def dimension_formula(n: int, d: int, tau) -> DimensionResult:
    """s = (1+n)/(d*tau), applicable for tau strictly above (n+1)/(n*d).

    Both flags use strict inequalities; boundary parameters are reported as
    not applicable rather than guessed.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    tau = rat(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    threshold = Fraction(n + 1, n * d)
    return DimensionResult(
        n=n,
        d=d,
        tau=tau,
        s=Fraction(n + 1) / (d * tau),
        threshold=threshold,
        corollary_applicable=tau > threshold,
        intrinsic_equals_ambient=tau > d,
    )
