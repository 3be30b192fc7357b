import random

import pytest
from hypothesis import given, strategies as st

from quadorbits.tower import (
    MAX_LEVEL, DivisionByZero, FieldElement, NotInSubfield, TowerLevelError, W,
    artin_schreier_solve, embed, format_element, inv, parse_element, sqrt,
    trace_to_f2,
)

F = FieldElement


def f4_mul(a, b):
    # F_2[y]/(y^2 + y + 1) by carry-less multiplication, independent of the tower
    p = 0
    for k in range(2):
        if b >> k & 1:
            p ^= a << k
    if p & 4:
        p ^= 0b111
    return p


def elements(level):
    return st.integers(0, (1 << (1 << level)) - 1).map(lambda b: F(b, level))


def test_char_two():
    assert F(1) + F(1) == F(0)
    a = F(0b1011, 2)
    assert a + F(0, 2) == a
    assert a + a == 0


def test_omega_relations():
    w2 = W * W
    assert W + w2 == F(1)
    assert w2 == W + 1
    assert inv(W) == W + 1


def test_f4_against_polynomial_model():
    for a in range(4):
        for b in range(4):
            assert (F(a, 1) * F(b, 1)).bits == f4_mul(a, b)


@pytest.mark.parametrize("level", [0, 1, 2])
def test_field_axioms_exhaustive(level):
    els = F.elements(level)
    for a in els:
        for b in els:
            assert a * b == b * a
            for c in els[:: max(1, len(els) // 5)]:
                assert a * (b + c) == a * b + a * c
                assert (a * b) * c == a * (b * c)
    for a in els[1:]:
        assert a * a.inv() == 1


def test_level2_group_is_cyclic():
    orders = set()
    for a in F.elements(2)[1:]:
        x, k = a, 1
        while x != 1:
            x = x * a
            k += 1
        orders.add(k)
    assert 15 in orders


@given(elements(3), elements(3), elements(3))
def test_level3_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        F(0, 2).inv()


@given(st.integers(0, 3).flatmap(elements))
def test_sqrt_squares_back(a):
    r = sqrt(a)
    assert r * r == a
    assert r.level == a.level


@given(elements(2), elements(2))
def test_sqrt_multiplicative(a, b):
    assert sqrt(a * b) == sqrt(a) * sqrt(b)


def test_sqrt_small():
    assert sqrt(F(1)) == 1
    assert sqrt(F(0)) == 0
    assert sqrt(W) == W * W


def test_trace_matches_conjugate_sum():
    for level in range(3):
        for a in F.elements(level):
            s, x = a, a
            for _ in range((1 << level) - 1):
                x = x * x
                s = s + x
            assert s.bits == trace_to_f2(a)


def test_trace_examples():
    assert trace_to_f2(F(0)) == 0
    assert trace_to_f2(W) == 1


@given(st.integers(0, 3).flatmap(elements))
def test_artin_schreier_root(g):
    t = artin_schreier_solve(g)
    assert t * t + t == g
    assert t.level == g.level + g.trace()


def test_artin_schreier_small():
    assert artin_schreier_solve(F(0)) == 0
    t = artin_schreier_solve(F(1))
    assert t == W and t.level == 1


@given(elements(2))
def test_artin_schreier_recovers_root(t):
    g = t * t + t
    assert artin_schreier_solve(g) in (t, t + 1)


@given(elements(2), elements(2))
def test_artin_schreier_additive_up_to_constant(a, b):
    d = artin_schreier_solve(a + b) + artin_schreier_solve(a) + artin_schreier_solve(b)
    assert d in (F(0), F(1))


@given(elements(1), elements(1))
def test_embed_homomorphism(a, b):
    for lv in (2, 3):
        assert embed(a * b, lv) == embed(a, lv) * embed(b, lv)
        assert embed(a + b, lv) == embed(a, lv) + embed(b, lv)
        assert embed(a, lv).embed(a.level).level == a.level


def test_embed_errors():
    assert embed(F(1), 5) == 1
    with pytest.raises(NotInSubfield):
        embed(F(0b0110, 2), 1)
    with pytest.raises(TowerLevelError):
        F(1, MAX_LEVEL + 1)


def test_text_round_trip():
    rng = random.Random(3)
    for level in range(4):
        for _ in range(20):
            a = F.random(level, rng)
            assert parse_element(format_element(a)) == a
            assert parse_element(format_element(a)).level == a.level
    assert format_element(W) == "w"
    assert parse_element("0b01@1") == W
    assert format_element(F(0b0100, 2)) == "0b0010@2"
    with pytest.raises(ValueError):
        parse_element("0b010@2")
