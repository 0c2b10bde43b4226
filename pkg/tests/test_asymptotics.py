"""Hypothesis validation, series verdicts, and the dimension formula."""

import random
from fractions import Fraction

import pytest

from polyheight import (
    ApproxFunction,
    DimFunction,
    Outcome,
    classical_verdict,
    dimension_formula,
    rat,
    series_verdict,
    validate_hypotheses,
)

from _oracles import condensation_probe


def psi_t(tau, c=1, beta=0):
    return ApproxFunction.power(tau, c, beta)


def f_s(s, gamma=0):
    return DimFunction.power(s, gamma)


def test_validate_examples():
    rep = validate_hypotheses(psi_t(2), f_s("1/2"), 1, 2)
    for name in ("psi_decreasing", "f_dimension_function", "f_growth", "f_doubling", "psi_compatibility"):
        assert rep.conditions[name].satisfied is True
    # tau = d without a log boost: the growth condition is the one that fails
    assert rep.conditions["growth_condition"].satisfied is False
    assert rep.required_ok() is True

    rep2 = validate_hypotheses(psi_t(2), f_s("1.5"), 1, 2)
    assert rep2.conditions["f_growth"].satisfied is False
    assert rep2.required_ok() is False

    rep3 = validate_hypotheses(psi_t(0), f_s("1/2"), 1, 2)
    assert rep3.conditions["psi_decreasing"].satisfied is True
    assert "degenerate" in rep3.conditions["psi_decreasing"].detail


def test_invalid_constructions():
    with pytest.raises(ValueError):
        ApproxFunction.power(-1)
    with pytest.raises(ValueError):
        ApproxFunction.power(0, beta=-1)  # increasing
    with pytest.raises(ValueError):
        ApproxFunction.power(2, c=0)
    with pytest.raises(ValueError):
        DimFunction.power(0)


def test_series_verdict_examples():
    v = series_verdict(psi_t(2), f_s("1/2"), 1, 2)
    assert v.outcome is Outcome.INFINITY and v.exponent == -1 and v.log_exponent == 0
    v2 = series_verdict(psi_t(2), f_s("0.6"), 1, 2)
    assert v2.outcome is Outcome.ZERO and v2.exponent == Fraction(-7, 5)
    v3 = series_verdict(psi_t(2), f_s("1/2", -2), 1, 2)
    assert v3.outcome is Outcome.ZERO and v3.exponent == -1 and v3.log_exponent == -2
    # log exponent exactly -1 on the critical line still diverges
    v4 = series_verdict(psi_t(2), f_s("1/2", -1), 1, 2)
    assert v4.outcome is Outcome.INFINITY


def test_series_verdict_not_applicable():
    v = series_verdict(psi_t(2), f_s("1.5"), 1, 2)
    assert v.outcome is Outcome.NOT_APPLICABLE
    assert v.exponent is None


def test_series_verdict_table_inconclusive():
    table = ApproxFunction.from_table([(1, "1/2"), (2, "1/4"), (3, "1/8")])
    v = series_verdict(table, f_s("1/2"), 1, 2)
    assert v.outcome is Outcome.INCONCLUSIVE


def test_classical_examples():
    v = classical_verdict(psi_t(2), f_s(1), 1)
    assert v.outcome is Outcome.INFINITY  # Dirichlet regime, Lebesgue case
    assert "Lebesgue" in v.note
    v2 = classical_verdict(psi_t(3), f_s(1), 1)
    assert v2.outcome is Outcome.ZERO
    # f = r^n reproduces the classical sum shape: exponent n - tau*n
    for n in (1, 2, 3):
        v3 = classical_verdict(psi_t(2), f_s(n), n)
        assert v3.exponent == n - 2 * n
    # a genuine Hausdorff case under the growth hypotheses
    v4 = classical_verdict(psi_t(3), f_s("1/2"), 1)
    assert v4.outcome is Outcome.INFINITY  # sum r^(1 - 3/2) = r^(-1/2)


def test_classical_not_applicable():
    # s > n and not the Lebesgue boundary: no theorem applies
    v = classical_verdict(psi_t(3), f_s(2), 1)
    assert v.outcome is Outcome.NOT_APPLICABLE


def test_dimension_examples():
    r = dimension_formula(1, 2, 2)
    assert r.s == Fraction(1, 2) and r.corollary_applicable and not r.intrinsic_equals_ambient
    r2 = dimension_formula(2, 2, 3)
    assert r2.s == Fraction(1, 2) and r2.corollary_applicable and r2.intrinsic_equals_ambient
    r3 = dimension_formula(1, 2, 1)
    assert not r3.corollary_applicable  # boundary tau = (n+1)/(nd), strict
    with pytest.raises(ValueError):
        dimension_formula(1, 2, 0)


def test_dimension_boundary_strictness():
    for n in (1, 2, 3):
        for d in (1, 2, 3, 4):
            edge = dimension_formula(n, d, Fraction(n + 1, n * d))
            assert not edge.corollary_applicable
            at_d = dimension_formula(n, d, d)
            assert not at_d.intrinsic_equals_ambient


def test_dimension_monotonicity():
    taus = [rat(t) for t in (3, 4, 5, 6, 7)]
    for n in range(1, 6):
        for d in range(1, 6):
            vals = [dimension_formula(n, d, t).s for t in taus]
            assert all(a > b for a, b in zip(vals, vals[1:]))
    for n in range(1, 6):
        for t in (3, 5):
            vals = [dimension_formula(n, d, t).s for d in range(1, 6)]
            assert all(a > b for a, b in zip(vals, vals[1:]))
    for d in range(1, 6):
        for t in (3, 5):
            vals = [dimension_formula(n, d, t).s for n in range(1, 6)]
            assert all(a < b for a, b in zip(vals, vals[1:]))


def test_dichotomy_property():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(1, 3)
        d = rng.randint(1, 4)
        tau = Fraction(rng.randint(1, 60), rng.randint(1, 10))
        s = Fraction(rng.randint(1, 10 * n - 1), 10)  # 0 < s < n
        v = series_verdict(psi_t(tau), f_s(s), n, d)
        assert v.outcome in (Outcome.ZERO, Outcome.INFINITY)


def test_numeric_cross_check():
    rng = random.Random(23)
    done = 0
    while done < 50:
        n = rng.randint(1, 3)
        d = rng.randint(1, 4)
        tau = Fraction(rng.randint(1, 50), 10)
        s = Fraction(rng.randint(1, 10 * n - 1), 10)
        if abs(float(d * tau * s - (n + 1))) < 0.05:
            continue  # heuristic abstains near the critical line
        psi, f = psi_t(tau), f_s(s)
        v = series_verdict(psi, f, n, d)
        probe = condensation_probe(psi, f, n, d)
        assert probe != 0
        assert (probe == -1) == (v.outcome is Outcome.ZERO)
        done += 1


def test_verdict_consistent_with_dimension_formula():
    # f = r^t flips from full to null measure exactly at t = (1+n)/(d*tau)
    for n, d, tau in [(1, 2, 2), (2, 2, 3), (1, 3, 4)]:
        s = dimension_formula(n, d, rat(tau)).s
        below = series_verdict(psi_t(tau), f_s(s * Fraction(9, 10)), n, d)
        above = series_verdict(psi_t(tau), f_s(s * Fraction(11, 10)), n, d)
        assert below.outcome is Outcome.INFINITY
        assert above.outcome is Outcome.ZERO


def test_growth_condition_flag():
    assert psi_t(3).growth_vanishes(2) is True
    assert psi_t(2).growth_vanishes(2) is False
    assert psi_t(2, beta="1/2").growth_vanishes(2) is True
    assert psi_t(1).growth_vanishes(2) is False


def test_psi_values_and_cmp():
    psi = psi_t(2, c=3)
    assert psi.value(4) == Fraction(3, 16)
    assert psi.cmp(4, Fraction(3, 16)) == 0
    assert psi.cmp(4, Fraction(1, 8)) < 0
    assert psi.cmp(4, Fraction(1, 4)) > 0
    half = psi_t("1/2")
    assert half.cmp(4, Fraction(1, 2)) == 0  # 4^(-1/2) exactly
    assert half.cmp(9, Fraction(1, 3)) == 0
    with pytest.raises(ValueError):
        psi_t(2, beta=1).cmp(4, Fraction(1, 4))


def test_value_approximations():
    half = psi_t("1/2")
    v = half.value(2)  # 2^(-1/2), dyadic approximation
    assert abs(v * v - Fraction(1, 2)) < Fraction(1, 10**30)
    assert half.value_upper(2) >= v
    f = f_s("0.6")
    x = Fraction(1, 32)
    approx = f.value(x)
    assert abs(approx**5 - x**3) < Fraction(1, 10**30)


def test_table_psi():
    table = ApproxFunction.from_table([(1, 1), (4, "1/16"), (2, "1/4")])
    assert table.value(2) == Fraction(1, 4)
    with pytest.raises(ValueError):
        table.value(3)
    with pytest.raises(ValueError):
        ApproxFunction.from_table([(1, "1/4"), (2, "1/2")])  # increasing
    assert table.growth_vanishes(2) is None


def test_verdict_serialization():
    v = series_verdict(psi_t(2), f_s("0.6"), 1, 2)
    rep = v.to_report()
    assert rep["outcome"] == "Zero"
    assert rep["exponent"] == "-7/5"
    assert rep["hypotheses"]["f_growth"]["status"] == "satisfied"
