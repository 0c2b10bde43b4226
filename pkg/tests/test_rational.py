"""Heights and projective points."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyheight import (
    ProjPoint,
    affine_height,
    projective_height,
    rat_str,
    rat_vec,
    to_projective,
)

from _oracles import min_denominator_brute

small_fracs = st.fractions(min_value=0, max_value=1, max_denominator=12)


def test_affine_height_examples():
    assert affine_height(rat_vec(["3/4", "5/6"])) == 12
    assert affine_height(rat_vec([0, 0])) == 1
    assert affine_height(rat_vec(["1/2", "1/4", "1/8"])) == 8


def test_to_projective_examples():
    assert to_projective(rat_vec(["2/3", "1/2"])).coords == (6, 4, 3)
    assert to_projective(rat_vec([1, 2])).coords == (1, 1, 2)
    assert to_projective(rat_vec([0])).coords == (1, 0)


def test_projective_height_examples():
    assert projective_height(ProjPoint.of([6, 4, 3])) == 6
    assert projective_height(ProjPoint.of([1, 0, 0])) == 1
    v = rat_vec(["2/3", "1/2"])
    assert projective_height(to_projective(v)) == 6
    assert affine_height(v) == 6


@given(st.lists(small_fracs, min_size=1, max_size=4))
@settings(max_examples=60)
def test_affine_height_minimality(vs):
    v = rat_vec(vs)
    assert affine_height(v) == min_denominator_brute(v)


@given(st.lists(small_fracs, min_size=1, max_size=4))
@settings(max_examples=60)
def test_height_comparison_on_unit_box(vs):
    v = rat_vec(vs)
    h = affine_height(v)
    hp = projective_height(to_projective(v))
    assert hp >= h
    assert hp <= h * (1 + max(int(-(-x.numerator // x.denominator)) for x in v) + 1)


@given(st.lists(st.integers(-40, 40), min_size=1, max_size=5))
@settings(max_examples=80)
def test_projective_canonical_idempotent(coords):
    if all(c == 0 for c in coords):
        with pytest.raises(ValueError):
            ProjPoint.of(coords)
        return
    p = ProjPoint.of(coords)
    assert ProjPoint.of(p.coords) == p
    g = 0
    for c in p.coords:
        g = _gcd(g, c)
    assert g == 1
    first = next(c for c in p.coords if c != 0)
    assert first > 0


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def test_projective_sign_canon():
    assert ProjPoint.of([-2, 4]).coords == (1, -2)
    assert ProjPoint.of([0, -3, 6]).coords == (0, 1, -2)


def test_serialization():
    assert rat_str(Fraction(3, 4)) == "3/4"
    assert rat_str(Fraction(-5, 1)) == "-5"
    p = ProjPoint.of([6, 4, 3])
    assert str(p) == "6:4:3"
    assert ProjPoint.parse("6:4:3") == p
    assert ProjPoint.parse("12:8:6") == p  # canonicalizes


def test_empty_vector_rejected():
    with pytest.raises(ValueError):
        rat_vec([])
