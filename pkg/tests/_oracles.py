"""Independent oracles the tests check the library against.

Each oracle deliberately avoids the code path it validates: denominator
minimality by trial division, primitive points via reduced-fraction
heights, ideal membership by exact linear algebra over monomial multiples,
and series convergence by Cauchy-condensed partial sums in log space.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from polyheight.mpoly import DEGREVLEX, MPoly
from polyheight.rational import affine_height


def min_denominator_brute(v) -> int:
    """Smallest D >= 1 with D*x integral for every coordinate, by trial."""
    d = 1
    while True:
        if all((Fraction(x) * d).denominator == 1 for x in v):
            return d
        d += 1


def primitive_points_brute(box, q: int) -> set[tuple[Fraction, ...]]:
    """All rational vectors in the box whose affine height is exactly q."""
    ranges = [range(math.ceil(lo * q), math.floor(hi * q) + 1) for lo, hi in box]
    out = set()
    for a in itertools.product(*ranges):
        v = tuple(Fraction(ai, q) for ai in a)
        if affine_height(v) == q:
            out.add(v)
    return out


def monomials_up_to(nvars: int, deg: int):
    for exps in itertools.product(range(deg + 1), repeat=nvars):
        if sum(exps) <= deg:
            yield exps


class SpanOracle:
    """Membership in {sum h_i g_i : deg h_i <= bound} by Gaussian elimination.

    Sound for membership (span subset of the ideal); complete only up to the
    cofactor degree bound.
    """

    def __init__(self, gens, bound: int = 4):
        self.pivots: dict[tuple[int, ...], dict] = {}
        for g in gens:
            if g.is_zero():
                continue
            for mono in monomials_up_to(g.nvars, bound):
                row = self._eliminate(g.mul_term(mono, Fraction(1)).terms)
                if row:
                    lead = max(row, key=DEGREVLEX.key)
                    lc = row[lead]
                    self.pivots[lead] = {m: c / lc for m, c in row.items()}

    def _eliminate(self, vec) -> dict:
        vec = dict(vec)
        while True:
            hit = None
            for m in vec:
                if m in self.pivots and (hit is None or DEGREVLEX.key(m) > DEGREVLEX.key(hit)):
                    hit = m
            if hit is None:
                return vec
            c = vec.pop(hit)
            for m2, c2 in self.pivots[hit].items():
                if m2 == hit:
                    continue
                nv = vec.get(m2, Fraction(0)) - c * c2
                if nv:
                    vec[m2] = nv
                else:
                    vec.pop(m2, None)

    def contains(self, p: MPoly) -> bool:
        return not self._eliminate(p.terms)


def condensation_probe(psi, f, n: int, d: int, r_max: int = 10**6) -> int:
    """Convergence of sum r^n f(psi(r^d)) from condensed terms 2^k a(2^k).

    Works on log2 of the condensed terms so nothing under/overflows.
    Returns -1 (converges), +1 (diverges), or 0 (abstain: too close to
    call from finitely many terms).
    """
    c, tau, beta = float(psi.c), float(psi.tau), float(psi.beta)
    s, gamma = float(f.s), float(f.gamma)
    logs = []
    for k in range(1, int(math.log2(r_max)) + 1):
        log2_psi = math.log2(c) - tau * k * d - beta * math.log2(
            math.log(math.e + 2.0 ** min(k * d, 1000))
        )
        ln_inv = -math.log(2) * log2_psi  # ln(1/psi(r^d))
        if gamma != 0 and ln_inv <= 1e-9:
            continue  # psi not yet small enough for the log factor
        log2_term = k * (n + 1) + s * log2_psi
        if gamma != 0:
            log2_term += gamma * math.log2(ln_inv)
        logs.append(log2_term)
    if len(logs) < 6:
        return 0
    deltas = [b - a for a, b in zip(logs, logs[1:])][-5:]
    avg = sum(deltas) / len(deltas)
    if avg < -0.04:
        return -1
    if avg > 0.04:
        return 1
    return 0


def random_mpoly(rng, nvars: int, max_deg: int, max_terms: int = 4, coeff_bound: int = 3) -> MPoly:
    """Random small polynomial with nonzero integer coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(nvars)] += 1
        c = 0
        while c == 0:
            c = rng.randint(-coeff_bound, coeff_bound)
        terms[tuple(mono)] = Fraction(c)
    return MPoly(nvars, terms)


def random_homogeneous(rng, nvars: int, deg: int, coeff_bound: int = 5) -> MPoly:
    """Random nonzero homogeneous polynomial of exact degree deg."""
    monos = [m for m in monomials_up_to(nvars, deg) if sum(m) == deg]
    while True:
        terms = {}
        for m in monos:
            if rng.random() < 0.6:
                c = rng.randint(-coeff_bound, coeff_bound)
                if c:
                    terms[m] = Fraction(c)
        if terms:
            return MPoly(nvars, terms)
