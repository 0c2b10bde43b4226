"""Buchberger engine and the common-zero decision procedure."""

import random
from fractions import Fraction

import pytest

from polyheight import (
    DEGREVLEX,
    LEX,
    MPoly,
    buchberger,
    ideal_member,
    morphism_condition,
    reduce,
    s_poly,
)

from _oracles import SpanOracle, random_homogeneous, random_mpoly


def V(n, i):
    return MPoly.var(n, i)


def C(n, c):
    return MPoly.const(n, c)


def test_reduce_examples():
    x1, x2 = V(2, 0), V(2, 1)
    assert reduce(x1**2 + x2**2, [x2**2]) == x1**2
    g = x1**2 * x2 + x1 - C(2, 1)
    assert reduce(g, [g]).is_zero()
    assert reduce(x1 * x2, [x1**2, x2**2]) == x1 * x2


def test_buchberger_examples():
    x1, x2 = V(2, 0), V(2, 1)
    gb = buchberger([x1**2 + x2**2, x1**2 - x2**2])
    assert list(gb.gens) == [x1**2, x2**2]
    gb2 = buchberger([3 * x1**2])
    assert list(gb2.gens) == [x1**2]
    gb3 = buchberger([x1 - x2, x2 - C(2, 1)], LEX)
    assert list(gb3.gens) == [x1 - C(2, 1), x2 - C(2, 1)]


def test_buchberger_all_zero():
    with pytest.raises(ValueError):
        buchberger([MPoly.zero(2)])


def test_ideal_member_examples():
    x1, x2 = V(2, 0), V(2, 1)
    gb = buchberger([x1**2 + x2**2, x1**2 - x2**2])
    assert ideal_member(x1**4, gb)
    gb2 = buchberger([x1**2])
    assert not ideal_member(x1, gb2)
    assert ideal_member(MPoly.zero(2), gb2)


def _random_ideals(count, seed=20240917):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        nvars = rng.randint(1, 3)
        gens = [random_mpoly(rng, nvars, 3) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            out.append(gens)
    return out


def spolys_reduce_to_zero(gb):
    gens = list(gb.gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not reduce(s_poly(gens[i], gens[j], gb.order), gens, gb.order).is_zero():
                return False
    return True


def test_buchberger_postcondition_random():
    for gens in _random_ideals(30):
        gb = buchberger(gens)
        assert spolys_reduce_to_zero(gb)
        for g in gb.gens:
            assert g.leading_coeff(gb.order) == 1


def test_reduced_basis_invariance():
    rng = random.Random(5)
    for gens in _random_ideals(12, seed=77):
        gb = buchberger(gens)
        shuffled = gens[::-1]
        rng.shuffle(shuffled)
        scaled = [g * Fraction(rng.randint(1, 7), rng.randint(1, 7)) for g in shuffled]
        assert buchberger(scaled).gens == gb.gens


def test_membership_vs_span_oracle():
    rng = random.Random(99)
    for gens in _random_ideals(10, seed=4242):
        gb = buchberger(gens)
        oracle = SpanOracle(gens, bound=4)
        nvars = gens[0].nvars
        # crafted members: small random combinations of the generators
        for _ in range(3):
            combo = MPoly.zero(nvars)
            for g in gens:
                combo = combo + random_mpoly(rng, nvars, 2, max_terms=2) * g
            assert oracle.contains(combo)
            assert ideal_member(combo, gb)
        # random probes: the span oracle must never contradict membership
        for _ in range(5):
            probe = random_mpoly(rng, nvars, 3)
            if oracle.contains(probe):
                assert ideal_member(probe, gb)
            if not ideal_member(probe, gb):
                assert not oracle.contains(probe)


def test_membership_crafted_nonmembers():
    x1, x2 = V(2, 0), V(2, 1)
    gens = [x1**2 + x2**2, x1**2 - x2**2]
    gb = buchberger(gens)
    oracle = SpanOracle(gens, bound=4)
    for p in [x1, x2, x1 * x2 + C(2, 1), C(2, 1)]:
        assert not ideal_member(p, gb)
        assert not oracle.contains(p)
    assert oracle.contains(x1**4)


def test_morphism_examples():
    x1, x2 = V(2, 0), V(2, 1)
    cert = morphism_condition([x1**2 + x2**2, x1**2 - x2**2])
    assert cert.holds
    assert cert.pure_power_witness == {0: (2, 0), 1: (0, 2)}
    cert2 = morphism_condition([x1**2 + x2**2])
    assert not cert2.holds
    assert cert2.missing_variables == (1,)
    x = V(1, 0)
    for a in (1, -3, 7):
        assert morphism_condition([a * x**4]).holds


def test_morphism_errors():
    x1, x2 = V(2, 0), V(2, 1)
    with pytest.raises(ValueError):
        morphism_condition([MPoly.zero(2)])
    with pytest.raises(ValueError):
        morphism_condition([x1**2 + x2])  # not homogeneous
    with pytest.raises(ValueError):
        morphism_condition([x1**2, x2])  # mixed degrees
    with pytest.raises(ValueError):
        morphism_condition([C(2, 3)])  # degree 0


def test_morphism_zero_forms_dropped():
    x1, x2 = V(2, 0), V(2, 1)
    cert = morphism_condition([MPoly.zero(2), x1**2, x2**2])
    assert cert.holds


def test_morphism_univariate_always_holds():
    rng = random.Random(12)
    x = V(1, 0)
    for _ in range(20):
        deg = rng.randint(1, 5)
        c = rng.choice([-4, -2, -1, 1, 2, 3])
        assert morphism_condition([c * x**deg]).holds


def test_morphism_single_form_fails_for_n2():
    rng = random.Random(13)
    for _ in range(20):
        form = random_homogeneous(rng, 2, rng.randint(1, 4))
        assert not morphism_condition([form]).holds


def test_certificate_report():
    x1, x2 = V(2, 0), V(2, 1)
    rep = morphism_condition([x1**2 + x2**2, x1**2 - x2**2]).to_report()
    assert rep == {
        "holds": True,
        "basis": ["x1^2", "x2^2"],
        "witnesses": {"x1": "x1^2", "x2": "x2^2"},
    }
    rep2 = morphism_condition([x1**2 + x2**2]).to_report()
    assert rep2["missing_variables"] == ["x2"]
