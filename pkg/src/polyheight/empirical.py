"""Finite-stage covers, tail sums, and box-counting dimension estimates.

A limsup set only cares about tails, so every stage here works on a
denominator window (Q_lo, Q_hi] rather than all q up to a bound.  The three
operations:

* build_cover    -- the balls of one stage, with the radius rule either
                    psi(q^d)/K (inner inclusion) or psi(H(F(p/q))) (outer).
* tail_sum       -- the stage's cover mass sum S1 and the comparison series
                    S2 = sum q^n f(psi(q^d)); S1/S2 is the observed constant.
* estimate_dimension -- counts grid cells touched by the inner-inclusion
                    balls, one count per stage, and regresses log N against
                    log(1/eps).

Cell/ball intersections are decided by exact rational comparisons.  For one
ambient dimension the count is a union of integer index ranges (merged and
summed, so arbitrarily fine grids cost nothing); in higher dimension cells
are enumerated explicitly under a size cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import ApproxFunction, DimFunction, dimension_formula
from .errors import PreconditionError
from .rational import rat_str
from .variety import (
    PrimitivePoint,
    VarietyContext,
    enumerate_primitive,
    heights_for_q,
    image_height,
)

# cap on explicitly enumerated cells in the n >= 2 counting path
_CELL_CAP = 5_000_000


@dataclass(frozen=True)
class Ball:
    center: PrimitivePoint
    radius: Fraction


@dataclass(frozen=True)
class FiniteStageCover:
    q_lo: int
    q_hi: int
    mode: str  # "lower" or "upper"
    balls: tuple[Ball, ...]

    def to_report(self) -> dict:
        return {
            "q_lo": self.q_lo,
            "q_hi": self.q_hi,
            "mode": self.mode,
            "balls": [
                {
                    "q": b.center.q,
                    "p": list(b.center.p),
                    "center": [rat_str(x) for x in b.center.as_fractions()],
                    "radius": rat_str(b.radius),
                }
                for b in self.balls
            ],
        }

    def csv_rows(self):
        header = ["q", "center", "radius"]
        rows = [[b.center.q, str(b.center), rat_str(b.radius)] for b in self.balls]
        return header, rows


def build_cover(
    ctx: VarietyContext,
    psi: ApproxFunction,
    q_lo: int,
    q_hi: int,
    radius_mode: str = "lower",
) -> FiniteStageCover:
    """Balls of the stage (q_lo, q_hi] under the chosen radius rule.

    Upper-mode radii are asserted >= the lower-mode radii pointwise (the
    image height never exceeds q^d and psi decreases).
    """
    if radius_mode not in ("lower", "upper"):
        raise ValueError(f"unknown radius mode {radius_mode!r}")
    if q_lo >= q_hi:
        raise ValueError("need q_lo < q_hi")
    k = ctx.lipschitz
    balls = []
    for q in range(q_lo + 1, q_hi + 1):
        lower_radius = psi.value(q**ctx.d) / k
        for pt in enumerate_primitive(ctx, [q]):
            if radius_mode == "lower":
                balls.append(Ball(pt, lower_radius))
            else:
                radius = psi.value(image_height(ctx, pt.p, pt.q))
                if radius < lower_radius:
                    raise AssertionError("upper-mode radius fell below the lower mode")
                balls.append(Ball(pt, radius))
    return FiniteStageCover(q_lo, q_hi, radius_mode, tuple(balls))


@dataclass(frozen=True)
class TailSumResult:
    s1: Fraction
    s2: Fraction
    ratio: Fraction | None  # observed constant C with S1 <= C * S2
    count: int

    def to_report(self) -> dict:
        return {
            "s1": rat_str(self.s1),
            "s2": rat_str(self.s2),
            "ratio": None if self.ratio is None else rat_str(self.ratio),
            "count": self.count,
        }


def tail_sum(
    ctx: VarietyContext,
    psi: ApproxFunction,
    f: DimFunction,
    n_lo: int,
    q_hi: int,
) -> TailSumResult:
    """S1 = sum of f(psi(H(F(p/q)))) over the stage, S2 = sum q^n f(psi(q^d)).

    The window is (n_lo, q_hi]; n_lo == q_hi gives empty sums.  Values are
    exact Fractions whenever the exponents allow, controlled-precision
    dyadic rationals otherwise.
    """
    if n_lo > q_hi:
        raise ValueError("need n_lo <= q_hi")
    s1 = Fraction(0)
    s2 = Fraction(0)
    total = 0
    memo: dict[int, Fraction] = {}

    def value_at(h: int) -> Fraction:
        if h not in memo:
            memo[h] = f.value(psi.value(h))
        return memo[h]

    for q in range(n_lo + 1, q_hi + 1):
        count, vals, counts = heights_for_q(ctx, q)
        if count:
            total += count
            for h, c in zip(vals, counts):
                s1 += c * value_at(h)
        s2 += q**ctx.n * value_at(q**ctx.d)
    ratio = s1 / s2 if s2 else None
    return TailSumResult(s1, s2, ratio, total)


# -- box counting -------------------------------------------------------------


@dataclass(frozen=True)
class StageCount:
    q: int
    eps: Fraction
    count: int


@dataclass(frozen=True)
class DimensionEstimate:
    tau: Fraction
    levels: tuple[StageCount, ...]
    slope: float
    residual: float
    predicted_s: Fraction

    def to_report(self) -> dict:
        return {
            "tau": rat_str(self.tau),
            "predicted_s": rat_str(self.predicted_s),
            "slope": self.slope,
            "residual": self.residual,
            "levels": [
                {"q": lv.q, "eps": rat_str(lv.eps), "count": lv.count} for lv in self.levels
            ],
        }

    def csv_rows(self):
        header = ["level", "q", "eps", "count"]
        rows = [
            [i, lv.q, rat_str(lv.eps), lv.count] for i, lv in enumerate(self.levels)
        ]
        return header, rows


def _index_range(c: Fraction, radius: Fraction, lo: Fraction, eps: Fraction, cells: int):
    """Grid cells [lo + k*eps, lo + (k+1)*eps] meeting [c - radius, c + radius]."""
    k_lo = math.ceil((c - radius - lo) / eps - 1)
    k_hi = math.floor((c + radius - lo) / eps)
    return max(k_lo, 0), min(k_hi, cells - 1)


def _merged_length(ranges: list[tuple[int, int]]) -> int:
    total = 0
    cur_lo: int | None = None
    cur_hi = 0
    for lo, hi in sorted(ranges):
        if cur_lo is None:
            cur_lo, cur_hi = lo, hi
        elif lo <= cur_hi + 1:
            cur_hi = max(cur_hi, hi)
        else:
            total += cur_hi - cur_lo + 1
            cur_lo, cur_hi = lo, hi
    if cur_lo is not None:
        total += cur_hi - cur_lo + 1
    return total


def count_cells(ctx: VarietyContext, balls, eps: Fraction) -> int:
    """Number of eps-grid cells over the box meeting the union of balls."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    dims = []
    for lo, hi in ctx.box:
        dims.append((lo, max(1, math.ceil((hi - lo) / eps))))
    if ctx.n == 1:
        lo, cells = dims[0]
        ranges = []
        for b in balls:
            k_lo, k_hi = _index_range(b.center.as_fractions()[0], b.radius, lo, eps, cells)
            if k_lo <= k_hi:
                ranges.append((k_lo, k_hi))
        return _merged_length(ranges)
    seen: set[tuple[int, ...]] = set()
    budget = _CELL_CAP
    for b in balls:
        center = b.center.as_fractions()
        spans = []
        for (lo, cells), c in zip(dims, center):
            k_lo, k_hi = _index_range(c, b.radius, lo, eps, cells)
            if k_lo > k_hi:
                spans = None
                break
            spans.append(range(k_lo, k_hi + 1))
        if spans is None:
            continue
        size = 1
        for s in spans:
            size *= len(s)
        budget -= size
        if budget < 0:
            raise ValueError("grid too fine for explicit cell enumeration with n >= 2")
        seen.update(_product_tuples(spans))
    return len(seen)


def _product_tuples(spans):
    if len(spans) == 1:
        for a in spans[0]:
            yield (a,)
        return
    import itertools

    yield from itertools.product(*spans)


def _fit_loglog(points: list[tuple[float, float]]) -> tuple[float, float]:
    n = len(points)
    mean_x = sum(x for x, _ in points) / n
    mean_y = sum(y for _, y in points) / n
    var = sum((x - mean_x) ** 2 for x, _ in points)
    cov = sum((x - mean_x) * (y - mean_y) for x, y in points)
    slope = cov / var
    intercept = mean_y - slope * mean_x
    residual = sum((y - (intercept + slope * x)) ** 2 for x, y in points)
    return slope, residual


def _log_frac(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def estimate_dimension(
    ctx: VarietyContext,
    tau,
    q_levels,
    eps_levels=None,
) -> DimensionEstimate:
    """Box-counting slope across stages (Q/2, Q] with radii psi_tau(q^d)/K.

    Each stage's grid step defaults to the smallest radius in the stage,
    psi_tau(Q^d)/K, so the grid resolves every ball it counts.  Needs the
    morphism certificate and tau inside the dimension formula's range.
    """
    if not ctx.morphism.holds:
        raise PreconditionError("morphism certificate fails: estimate has no target")
    result = dimension_formula(ctx.n, ctx.d, tau)
    if not result.corollary_applicable:
        raise PreconditionError(
            f"tau = {rat_str(result.tau)} is not above the threshold {rat_str(result.threshold)}"
        )
    qs = sorted({int(q) for q in q_levels})
    if len(qs) < 3:
        raise ValueError("degenerate regression: need at least 3 stages")
    if eps_levels is not None and len(eps_levels) != len(qs):
        raise ValueError("eps_levels must match q_levels")
    psi = ApproxFunction.power(result.tau)
    k = ctx.lipschitz
    levels = []
    for i, q_hi in enumerate(qs):
        q_lo = q_hi // 2
        eps = eps_levels[i] if eps_levels is not None else psi.value(q_hi**ctx.d) / k
        cover = build_cover(ctx, psi, q_lo, q_hi, "lower")
        levels.append(StageCount(q_hi, eps, count_cells(ctx, cover.balls, eps)))
    for a, b in zip(levels, levels[1:]):
        if b.eps >= a.eps:
            raise ValueError("eps levels must be strictly decreasing")
        if b.count < a.count:
            raise ValueError("cell counts must be non-decreasing as eps shrinks")
    points = [(-_log_frac(lv.eps), math.log(lv.count)) for lv in levels]
    slope, residual = _fit_loglog(points)
    return DimensionEstimate(
        tau=result.tau,
        levels=tuple(levels),
        slope=slope,
        residual=residual,
        predicted_s=result.s,
    )
