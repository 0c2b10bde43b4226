"""Buchberger's algorithm over Q and the common-zero decision procedure.

The decision this module exists for: a family of homogeneous polynomials in
n variables vanishes simultaneously over the algebraic closure of Q only at
the origin iff the leading-term ideal of (any) Groebner basis contains a
pure power of every variable.  That criterion is exact, certificate
producing, and needs nothing beyond Buchberger over Q.

Determinism contract: pairs are selected by the normal strategy (minimal
lcm in the monomial order, ties by index), Buchberger's coprime-lcm
criterion skips trivial pairs, and the final basis is reduced (monic,
inter-reduced) and sorted -- so the output is the unique reduced basis of
the ideal, independent of generator order or scaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .mpoly import (
    DEGREVLEX,
    MonOrder,
    Monomial,
    MPoly,
    monomial_div,
    monomial_lcm,
    monomial_mul,
)


def reduce(p: MPoly, gens: list[MPoly] | tuple[MPoly, ...], order: MonOrder = DEGREVLEX) -> MPoly:
    """Remainder of multivariate division of p by gens.

    No monomial of the remainder is divisible by any generator's leading
    monomial, and p minus the remainder lies in the ideal generated by gens.
    Generators are tried in list order, so the remainder is deterministic.
    """
    gens = [g for g in gens if not g.is_zero()]
    lead = [(g.leading_monomial(order), g.leading_coeff(order), g) for g in gens]
    work = dict(p.terms)
    remainder: dict[Monomial, Fraction] = {}
    while work:
        mono = max(work, key=order.key)
        coeff = work.pop(mono)
        for lm, lc, g in lead:
            quot = monomial_div(mono, lm)
            if quot is not None:
                # work -= (coeff/lc) * x^quot * g  (the lead term cancels)
                scale = coeff / lc
                for m2, c2 in g.terms.items():
                    if m2 == lm:
                        continue
                    m = monomial_mul(m2, quot)
                    c = work.get(m, Fraction(0)) - scale * c2
                    if c:
                        work[m] = c
                    else:
                        work.pop(m, None)
                break
        else:
            remainder[mono] = coeff
    return MPoly(p.nvars, remainder)


def s_poly(f: MPoly, g: MPoly, order: MonOrder = DEGREVLEX) -> MPoly:
    """S-polynomial: cancel the leading terms of f and g against their lcm."""
    lmf, lmg = f.leading_monomial(order), g.leading_monomial(order)
    l = monomial_lcm(lmf, lmg)
    mf = monomial_div(l, lmf)
    mg = monomial_div(l, lmg)
    return f.mul_term(mf, 1 / f.leading_coeff(order)) - g.mul_term(mg, 1 / g.leading_coeff(order))


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, inter-reduced, sorted descending."""

    order: MonOrder
    gens: tuple[MPoly, ...]

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.gens]

    def to_text(self, names=None) -> list[str]:
        return [g.to_text(names, self.order) for g in self.gens]


def buchberger(gens: list[MPoly] | tuple[MPoly, ...], order: MonOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens."""
    basis = [g * (1 / g.leading_coeff(order)) for g in gens if not g.is_zero()]
    if not basis:
        raise ValueError("all generators are zero")
    lms = [g.leading_monomial(order) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_key(p: tuple[int, int]):
        lcm = monomial_lcm(lms[p[0]], lms[p[1]])
        return (order.key(lcm), p)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.remove((i, j))
        lcm = monomial_lcm(lms[i], lms[j])
        if lcm == monomial_mul(lms[i], lms[j]):
            continue  # coprime leading monomials: S-polynomial reduces to 0
        r = reduce(s_poly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            r = r * (1 / r.leading_coeff(order))
            basis.append(r)
            lms.append(r.leading_monomial(order))
            k = len(basis) - 1
            pairs.update((i2, k) for i2 in range(k))

    return GroebnerBasis(order, tuple(_interreduce(_minimalize(basis, order), order)))


def _minimalize(basis: list[MPoly], order: MonOrder) -> list[MPoly]:
    """Drop generators whose leading monomial another's divides."""
    kept: list[MPoly] = []
    for g in sorted(basis, key=lambda h: order.key(h.leading_monomial(order))):
        lm = g.leading_monomial(order)
        if all(monomial_div(lm, h.leading_monomial(order)) is None for h in kept):
            kept.append(g)
    return kept


def _interreduce(basis: list[MPoly], order: MonOrder) -> list[MPoly]:
    """Fully reduce each generator against the others; sort descending."""
    out = []
    for i, g in enumerate(basis):
        r = reduce(g, basis[:i] + basis[i + 1 :], order)
        out.append(r * (1 / r.leading_coeff(order)))
    out.sort(key=lambda h: order.key(h.leading_monomial(order)), reverse=True)
    return out


def ideal_member(p: MPoly, gb: GroebnerBasis) -> bool:
    """True iff p reduces to zero modulo the basis."""
    return reduce(p, list(gb.gens), gb.order).is_zero()


@dataclass(frozen=True)
class MorphismCertificate:
    """Outcome of the only-common-zero-is-origin test for top-degree forms.

    ``holds`` is True exactly when, for every variable, some basis element
    has a pure power of that variable as its leading monomial; the witness
    monomials (or the variables with no pure power) are recorded so the
    verdict can be audited without rerunning Buchberger.
    """

    holds: bool
    nvars: int
    basis: GroebnerBasis
    pure_power_witness: dict[int, Monomial] = field(default_factory=dict)
    missing_variables: tuple[int, ...] = ()

    def to_report(self, names=None) -> dict:
        if names is None:
            names = [f"x{i+1}" for i in range(self.nvars)]
        report = {
            "holds": self.holds,
            "basis": self.basis.to_text(names),
        }
        if self.holds:
            report["witnesses"] = {
                names[i]: _mono_text(m, names) for i, m in sorted(self.pure_power_witness.items())
            }
        else:
            report["missing_variables"] = [names[i] for i in self.missing_variables]
        return report


def _mono_text(m: Monomial, names) -> str:
    parts = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, m) if e]
    return "*".join(parts) if parts else "1"


def morphism_condition(top_forms: list[MPoly] | tuple[MPoly, ...]) -> MorphismCertificate:
    """Decide whether homogeneous forms share no zero but the origin over Qbar.

    Zero polynomials are dropped; the rest must be homogeneous of one common
    degree >= 1.  The certificate holds iff the reduced Groebner basis has a
    pure-power leading monomial for every variable (zero-dimensionality of
    the affine cone), in which case the graph map extends to a morphism on
    projective space and the height machinery applies.
    """
    forms = [f for f in top_forms if not f.is_zero()]
    if not forms:
        raise ValueError("all top forms are zero")
    degs = {f.total_degree() for f in forms}
    if any(not f.is_homogeneous() for f in forms) or len(degs) != 1:
        raise ValueError("top forms must be homogeneous of one common degree")
    if degs == {0}:
        raise ValueError("top forms must have degree >= 1")

    gb = buchberger(forms, DEGREVLEX)
    nvars = forms[0].nvars
    witness: dict[int, Monomial] = {}
    for g in gb.gens:
        lm = g.leading_monomial(gb.order)
        nonzero = [i for i, e in enumerate(lm) if e]
        if len(nonzero) == 1 and nonzero[0] not in witness:
            witness[nonzero[0]] = lm
    missing = tuple(i for i in range(nvars) if i not in witness)
    if missing:
        return MorphismCertificate(False, nvars, gb, {}, missing)
    return MorphismCertificate(True, nvars, gb, witness, ())
