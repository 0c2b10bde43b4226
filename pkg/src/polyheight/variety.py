"""The graph variety: context, graph maps, enumeration, and height scans.

A context bundles the defining integer polynomials P_1..P_m in n variables,
the closed rational box the scans run over, a sup-norm Lipschitz bound K for
the graph map F(x) = (x, P_1(x), ..., P_m(x)), and the morphism certificate
for the top-degree forms.  K is a crude coefficient-sum bound on the
gradient: only existence matters, not optimality.

Heights of image points are computed exactly in integer arithmetic: with
gcd(p, q) handled coordinatewise, the y_j coordinate of F(p/q) equals
(homogenized P_j)(q, p) / q^d, so the affine height of the image is an lcm
of integer cofactors.  A vectorized numpy path (int64, with an overflow
bound check) keeps million-point scans fast; the pure-Python path is the
reference and the fallback.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .asymptotics import ApproxFunction
from .errors import PreconditionError
from .groebner import MorphismCertificate, morphism_condition
from .mpoly import MPoly
from .rational import ProjPoint, RatVec, rat, rat_str, rat_vec

Box = tuple[tuple[Fraction, Fraction], ...]

# grids larger than this per q fall back to the streaming Python path
_NP_GRID_CAP = 4_000_000


def make_box(spec: Sequence[Sequence] | None, n: int) -> Box:
    """Normalize a box specification; default is the closed unit box."""
    if spec is None:
        return tuple((Fraction(0), Fraction(1)) for _ in range(n))
    box = tuple((rat(lo), rat(hi)) for lo, hi in spec)
    if len(box) != n:
        raise ValueError(f"box needs {n} intervals, got {len(box)}")
    if any(lo > hi for lo, hi in box):
        raise ValueError("box intervals must have lo <= hi")
    return box


@dataclass(frozen=True)
class PrimitivePoint:
    """A rational point p/q with gcd(p_1, ..., p_n, q) = 1."""

    p: tuple[int, ...]
    q: int

    def as_fractions(self) -> RatVec:
        return tuple(Fraction(pi, self.q) for pi in self.p)

    def __str__(self) -> str:
        return ",".join(rat_str(x) for x in self.as_fractions())


@dataclass(frozen=True)
class VarietyContext:
    n: int
    m: int
    polys: tuple[MPoly, ...]
    degrees: tuple[int, ...]
    d: int
    box: Box
    lipschitz: Fraction
    morphism: MorphismCertificate
    top_forms: tuple[MPoly, ...]
    hom_polys: tuple[MPoly, ...]


def top_forms(polys: Sequence[MPoly], d: int) -> list[MPoly]:
    """Degree-d homogeneous slices of the defining polynomials."""
    return [p.homogeneous_parts(d)[d] for p in polys]


def _abs_coeff_bound(p: MPoly, box: Box) -> Fraction:
    """Sum of |coeff| * max|x^mono| over the box: a sup-norm bound for |p|."""
    bound = Fraction(0)
    for mono, coeff in p.terms.items():
        term = abs(coeff)
        for (lo, hi), e in zip(box, mono):
            if e:
                term *= max(abs(lo), abs(hi)) ** e
        bound += term
    return bound


def build_context(polys: Sequence[MPoly], box=None) -> VarietyContext:
    """Validate a polynomial system and assemble the scan context."""
    polys = tuple(polys)
    if not polys:
        raise ValueError("need at least one defining polynomial")
    n = polys[0].nvars
    if any(p.nvars != n for p in polys):
        raise ValueError("defining polynomials must share one variable count")
    if any(not p.is_integral() for p in polys):
        raise ValueError("defining polynomials must have integer coefficients")
    degrees = tuple(max(p.total_degree(), 0) for p in polys)
    d = max(degrees)
    if d < 1:
        raise ValueError("constant system: maximum degree must be >= 1")
    bx = make_box(box, n)

    k = Fraction(1) + max(
        sum((_abs_coeff_bound(p.partial(i), bx) for i in range(n)), Fraction(0)) for p in polys
    )
    tops = tuple(top_forms(polys, d))
    cert = morphism_condition(tops)
    homs = tuple(p.homogenize(d) for p in polys)
    return VarietyContext(
        n=n,
        m=len(polys),
        polys=polys,
        degrees=degrees,
        d=d,
        box=bx,
        lipschitz=k,
        morphism=cert,
        top_forms=tops,
        hom_polys=homs,
    )


def in_box(box: Box, x: Sequence[Fraction]) -> bool:
    return all(lo <= xi <= hi for (lo, hi), xi in zip(box, x))


def apply_F(ctx: VarietyContext, x: Sequence[Fraction | int | str]) -> RatVec:
    """Exact image (x, P_1(x), ..., P_m(x)) on the graph."""
    xv = rat_vec(x)
    if len(xv) != ctx.n:
        raise ValueError(f"expected {ctx.n} coordinates, got {len(xv)}")
    if not in_box(ctx.box, xv):
        warnings.warn("point lies outside the configured box", stacklevel=2)
    return xv + tuple(p.evaluate(xv) for p in ctx.polys)


def apply_Fstar(ctx: VarietyContext, point: ProjPoint) -> ProjPoint:
    """Projective graph map (X0^d, X0^(d-1) X_i ..., P_j homogenized ...)."""
    coords = point.coords
    if len(coords) != ctx.n + 1:
        raise ValueError(f"expected {ctx.n + 1} projective coordinates")
    x0 = coords[0]
    image = [x0**ctx.d]
    image.extend(x0 ** (ctx.d - 1) * xi for xi in coords[1:])
    image.extend(_eval_int(h, coords) for h in ctx.hom_polys)
    if all(c == 0 for c in image):
        raise ValueError(
            "image vanishes: the point lies in the base locus "
            "(possible only when the morphism certificate fails)"
        )
    return ProjPoint.of(image)


def _eval_int(p: MPoly, xs: Sequence[int]) -> int:
    """Integer evaluation of an integer-coefficient polynomial."""
    total = 0
    for mono, coeff in p.terms.items():
        term = coeff.numerator
        for x, e in zip(xs, mono):
            if e:
                term *= x**e
        total += term
    return total


def numerator_range(box_i: tuple[Fraction, Fraction], q: int) -> range:
    lo, hi = box_i
    return range(ceil(lo * q), floor(hi * q) + 1)


def enumerate_primitive(ctx: VarietyContext, qs: Iterable[int]) -> Iterator[PrimitivePoint]:
    """All primitive p/q in the box with q in qs: q ascending, p lexicographic."""
    for q in sorted({int(q) for q in qs}):
        if q < 1:
            raise ValueError("denominators must be >= 1")
        ranges = [numerator_range(b, q) for b in ctx.box]
        for p in itertools.product(*ranges):
            g = q
            for pi in p:
                g = gcd(g, pi)
            if g == 1:
                yield PrimitivePoint(p, q)


def image_height(ctx: VarietyContext, p: Sequence[int], q: int) -> int:
    """Affine height of F(p/q), exactly, in integer arithmetic."""
    height = 1
    for pi in p:
        height = lcm(height, q // gcd(pi, q))
    qd = q**ctx.d
    coords = (q, *p)
    for h in ctx.hom_polys:
        a = _eval_int(h, coords)
        height = lcm(height, qd // gcd(abs(a), qd))
    return height


# -- vectorized per-q machinery ---------------------------------------------


def _np_primitive(ctx: VarietyContext, q: int) -> list[np.ndarray] | None:
    """Primitive numerator columns for one q, or None when the grid is too big."""
    ranges = [numerator_range(b, q) for b in ctx.box]
    total = 1
    for r in ranges:
        total *= max(len(r), 0)
    if total == 0:
        return [np.empty(0, dtype=np.int64) for _ in ranges]
    if total > _NP_GRID_CAP:
        return None
    axes = [np.arange(r.start, r.stop, dtype=np.int64) for r in ranges]
    if len(axes) == 1:
        c = axes[0]
        return [c[np.gcd(c, q) == 1]]
    mesh = np.meshgrid(*axes, indexing="ij")
    cols = [m.reshape(-1) for m in mesh]
    g = np.gcd(cols[0], q)
    for c in cols[1:]:
        g = np.gcd(g, c)
    mask = g == 1
    return [c[mask] for c in cols]


def _np_heights(ctx: VarietyContext, q: int, cols: list[np.ndarray]) -> np.ndarray | None:
    """int64 image heights aligned with cols, or None when int64 could overflow."""
    qd = q**ctx.d
    if qd >= 2**31:
        return None
    num_bound = max(
        (max(abs(r.start), abs(r.stop - 1)) for r in (numerator_range(b, q) for b in ctx.box)),
        default=1,
    )
    base = max(q, num_bound, 1)
    for h in ctx.hom_polys:
        coeff_sum = sum(abs(c.numerator) for c in h.terms.values())
        if coeff_sum * base**ctx.d >= 2**62:
            return None

    if not len(cols[0]):
        return np.empty(0, dtype=np.int64)
    if len(cols) == 1:
        # primitivity already forces gcd(p, q) = 1 in one dimension
        height = np.full(cols[0].shape, q, dtype=np.int64)
    else:
        height = q // np.gcd(cols[0], q)
        for c in cols[1:]:
            height = np.lcm(height, q // np.gcd(c, q))
    # cache small powers of each column
    powers: list[dict[int, np.ndarray]] = [dict() for _ in cols]

    def col_pow(i: int, e: int) -> np.ndarray:
        if e not in powers[i]:
            powers[i][e] = cols[i] ** e
        return powers[i][e]

    for h in ctx.hom_polys:
        acc = None
        for mono, coeff in h.terms.items():
            scalar = coeff.numerator * q ** mono[0]
            term = None
            for i, e in enumerate(mono[1:]):
                if e:
                    term = col_pow(i, e) if term is None else term * col_pow(i, e)
            term = (
                np.full(cols[0].shape, scalar, dtype=np.int64)
                if term is None
                else term * scalar
            )
            acc = term if acc is None else acc + term
        height = np.lcm(height, qd // np.gcd(np.abs(acc), qd))
    return height


def heights_for_q(ctx: VarietyContext, q: int):
    """(count, unique height values, their counts) for all primitive p/q."""
    cols = _np_primitive(ctx, q)
    if cols is not None:
        hs = _np_heights(ctx, q, cols)
        if hs is not None:
            if not len(hs):
                return 0, [], []
            vals, counts = np.unique(hs, return_counts=True)
            return int(len(hs)), [int(v) for v in vals], [int(c) for c in counts]
    tally: dict[int, int] = {}
    count = 0
    for pt in enumerate_primitive(ctx, [q]):
        h = image_height(ctx, pt.p, q)
        tally[h] = tally.get(h, 0) + 1
        count += 1
    vals = sorted(tally)
    return count, vals, [tally[v] for v in vals]


# -- height bound scan -------------------------------------------------------


@dataclass(frozen=True)
class PerQStats:
    q: int
    count: int
    min_ratio: Fraction
    max_ratio: Fraction


@dataclass(frozen=True)
class HeightBoundReport:
    """Observed H(F(p/q)) / q^d ratios: per-q extremes and the global floor."""

    q_min: int
    q_max: int
    per_q: tuple[PerQStats, ...]
    delta_hat: Fraction
    count: int
    advisory: bool

    def to_report(self) -> dict:
        return {
            "q_min": self.q_min,
            "q_max": self.q_max,
            "delta_hat": rat_str(self.delta_hat),
            "count": self.count,
            "advisory": self.advisory,
            "per_q": [
                {
                    "q": s.q,
                    "count": s.count,
                    "min_ratio": rat_str(s.min_ratio),
                    "max_ratio": rat_str(s.max_ratio),
                }
                for s in self.per_q
            ],
        }

    def csv_rows(self):
        header = ["q", "count", "min_ratio", "max_ratio"]
        rows = [
            [s.q, s.count, rat_str(s.min_ratio), rat_str(s.max_ratio)] for s in self.per_q
        ]
        return header, rows


def height_bound_scan(ctx: VarietyContext, q_max: int, q_min: int = 1) -> HeightBoundReport:
    """Aggregate image-height ratios for all primitive points with q in range.

    Every ratio is asserted <= 1 (q^d is a common denominator of the image).
    When the morphism certificate fails the report is advisory: the theory
    no longer promises a positive floor, but the data is still recorded.
    """
    if q_min < 1 or q_max < q_min:
        raise ValueError("need 1 <= q_min <= q_max")
    stats = []
    total = 0
    delta_hat: Fraction | None = None
    for q in range(q_min, q_max + 1):
        count, vals, _counts = heights_for_q(ctx, q)
        if not count:
            continue
        qd = q**ctx.d
        if vals[-1] > qd:
            raise AssertionError(f"height bound violated at q={q}: {vals[-1]} > {qd}")
        lo = Fraction(vals[0], qd)
        hi = Fraction(vals[-1], qd)
        stats.append(PerQStats(q, count, lo, hi))
        total += count
        if delta_hat is None or lo < delta_hat:
            delta_hat = lo
    if delta_hat is None:
        raise ValueError("no primitive points in range (empty box?)")
    return HeightBoundReport(
        q_min=q_min,
        q_max=q_max,
        per_q=tuple(stats),
        delta_hat=delta_hat,
        count=total,
        advisory=not ctx.morphism.holds,
    )


# -- off-manifold approximant check ------------------------------------------

Interval = tuple[Fraction, Fraction]


def interval_pow(iv: Interval, e: int) -> Interval:
    lo, hi = iv
    if e == 0:
        return Fraction(1), Fraction(1)
    if e % 2 == 1 or lo >= 0:
        return lo**e, hi**e
    if hi <= 0:
        return hi**e, lo**e
    return Fraction(0), max(-lo, hi) ** e


def interval_mul(a: Interval, b: Interval) -> Interval:
    vals = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(vals), max(vals)


def interval_eval(p: MPoly, ivs: Sequence[Interval]) -> Interval:
    """Rational interval enclosure of p over a box."""
    lo = hi = Fraction(0)
    for mono, coeff in p.terms.items():
        t: Interval = (Fraction(1), Fraction(1))
        for iv, e in zip(ivs, mono):
            if e:
                t = interval_mul(t, interval_pow(iv, e))
        if coeff > 0:
            lo, hi = lo + coeff * t[0], hi + coeff * t[1]
        else:
            lo, hi = lo + coeff * t[1], hi + coeff * t[0]
    return lo, hi


def _dist_to_interval(x: Fraction, iv: Interval) -> Fraction:
    if x < iv[0]:
        return iv[0] - x
    if x > iv[1]:
        return x - iv[1]
    return Fraction(0)


@dataclass(frozen=True)
class OffManifoldFinding:
    point: RatVec
    height: int
    status: str  # "inside" or "uncertain"
    witness: RatVec | None

    def to_report(self) -> dict:
        return {
            "point": [rat_str(x) for x in self.point],
            "height": self.height,
            "status": self.status,
            "witness": None if self.witness is None else [rat_str(x) for x in self.witness],
        }


def _classify_distance(
    ctx: VarietyContext,
    rx: RatVec,
    ry: RatVec,
    psi: ApproxFunction,
    height: int,
    t_up: Fraction,
    depth_limit: int,
) -> tuple[str, RatVec | None]:
    """Is sup-dist(r, F(box)) <= psi(height)?  Exact trichotomy by subdivision.

    The root is the box clipped to the x-window where the x-part of the
    distance can be under psi(height); a sub-box is pruned when the interval
    enclosure proves every point exceeds the threshold, and a midpoint
    witness settles "inside".  Boxes surviving to depth_limit make the
    answer "uncertain" rather than silently dropping them.
    """
    root: list[Interval] = []
    for (lo, hi), xi in zip(ctx.box, rx):
        clo, chi = max(lo, xi - t_up), min(hi, xi + t_up)
        if clo > chi:
            return "outside", None
        root.append((clo, chi))

    k = ctx.lipschitz
    stack: list[tuple[list[Interval], int]] = [(root, 0)]
    uncertain = False
    while stack:
        ivs, depth = stack.pop()
        # lower bound for the sup-distance over this sub-box
        g_lo = max(_dist_to_interval(xi, iv) for xi, iv in zip(rx, ivs))
        for p, yj in zip(ctx.polys, ry):
            g_lo = max(g_lo, _dist_to_interval(yj, interval_eval(p, ivs)))
        if psi.cmp(height, g_lo) > 0:
            continue  # provably outside on this sub-box
        # witness probes: midpoint plus the two corners (corners catch
        # candidates whose distance is attained exactly on the box boundary)
        mid = tuple((lo + hi) / 2 for lo, hi in ivs)
        probes = [mid, tuple(lo for lo, _ in ivs), tuple(hi for _, hi in ivs)]
        g_mid = None
        for probe in probes:
            g = max(abs(xi - ci) for xi, ci in zip(rx, probe))
            for p, yj in zip(ctx.polys, ry):
                g = max(g, abs(p.evaluate(probe) - yj))
            if psi.cmp(height, g) <= 0:
                return "inside", probe
            if probe is mid:
                g_mid = g
        radius = max(hi - lo for lo, hi in ivs) / 2
        if psi.cmp(height, g_mid - k * radius) > 0:
            continue  # Lipschitz bound: the whole sub-box stays outside
        if depth >= depth_limit:
            uncertain = True
            continue
        widest = max(range(len(ivs)), key=lambda i: ivs[i][1] - ivs[i][0])
        lo, hi = ivs[widest]
        cut = (lo + hi) / 2
        left = list(ivs)
        right = list(ivs)
        left[widest] = (lo, cut)
        right[widest] = (cut, hi)
        stack.append((left, depth + 1))
        stack.append((right, depth + 1))
    return ("uncertain" if uncertain else "outside"), None


def off_manifold_check(
    ctx: VarietyContext,
    psi: ApproxFunction,
    d_max: int,
    d_min: int = 1,
    depth_limit: int = 20,
) -> list[OffManifoldFinding]:
    """Search for off-graph rationals within psi(height) of the graph piece.

    Requires the growth condition r^d psi(r) -> 0 (otherwise the underlying
    statement says nothing and the check refuses), and a pure power psi so
    every classification is an exact rational comparison.  Returns every
    "inside" finding (a genuine violation: an off-graph point that close)
    plus any "uncertain" leftovers from the subdivision depth limit.
    """
    if psi.growth_vanishes(ctx.d) is not True:
        raise PreconditionError(
            f"growth condition fails: r^{ctx.d} * psi(r) does not tend to 0"
        )
    if not psi.is_pure_power:
        raise PreconditionError("off-manifold check needs a pure power psi (beta = 0)")
    if d_min < 1 or d_max < d_min:
        raise ValueError("need 1 <= d_min <= d_max")

    # y-coordinate enclosure of the graph over the box
    y_ranges = [interval_eval(p, list(ctx.box)) for p in ctx.polys]
    findings: list[OffManifoldFinding] = []
    for height in range(d_min, d_max + 1):
        t_up = psi.value_upper(height)
        ranges = []
        for lo, hi in ctx.box:
            ranges.append(range(ceil((lo - t_up) * height), floor((hi + t_up) * height) + 1))
        for ylo, yhi in y_ranges:
            ranges.append(range(ceil((ylo - t_up) * height), floor((yhi + t_up) * height) + 1))
        for a in itertools.product(*ranges):
            g = height
            for ai in a:
                g = gcd(g, ai)
            if g != 1:
                continue
            r = tuple(Fraction(ai, height) for ai in a)
            rx, ry = r[: ctx.n], r[ctx.n :]
            if all(p.evaluate(rx) == yj for p, yj in zip(ctx.polys, ry)):
                continue  # on the graph: not an off-manifold candidate
            status, witness = _classify_distance(ctx, rx, ry, psi, height, t_up, depth_limit)
            if status != "outside":
                findings.append(OffManifoldFinding(r, height, status, witness))
    return findings
