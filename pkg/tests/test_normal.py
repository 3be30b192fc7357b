import random

import pytest
from hypothesis import given, settings, strategies as st

from quadorbits.census import enumerate_normal_forms, enumerate_qn
from quadorbits.forms import GroupElement, QuadraticForm, act, parse_form
from quadorbits.normal import (
    InvalidInput, NormalForm, arc_diagram, brank, cc, connected_components,
    diagram_ascii, diagram_dot, diagram_tikz, dyck_path, extend, in_qn,
    is_nondegenerate, is_normal, normalize, restrict,
)
from quadorbits.tower import FieldElement

DIAGRAM2 = "x1^2 + x1*x5 + x2*x3 + x4^2 + x4*x6 + x7^2 + x8*x9"
MOUNTAIN = [(1, 3), (2, 7), (4, 8), (5, 10), (6, 11), (9, 13), (12, 14)]


def nf(text, n=None):
    return NormalForm.parse(text, n)


def check(q):
    res, w = normalize(q)
    assert w.is_borel()
    assert act(w, q) == res.as_form()
    assert is_normal(res.as_form())[0]
    return res, w


def test_is_normal_accepts_diagram_two():
    ok, viol = is_normal(parse_form(DIAGRAM2))
    assert ok and viol == []


def test_is_normal_c1():
    ok, viol = is_normal(parse_form("x1^2 + x2^2"))
    assert not ok
    assert [v.condition for v in viol] == ["C1"]


def test_is_normal_c2():
    ok, viol = is_normal(parse_form("x1^2 + x1*x4 + x2^2 + x2*x3"))
    assert not ok
    assert any(v.condition == "C2" for v in viol)


def test_is_normal_other_violations():
    assert not is_normal(parse_form("w*x1^2"))[0]
    assert not is_normal(parse_form("x1*x2 + x1*x3"))[0]
    assert is_normal(QuadraticForm(3))[0]


def test_violations_reproducible():
    # every reported C1/C2 violation can be re-derived from the components
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randrange(2, 7)
        c = {}
        free = list(range(1, n + 1))
        rng.shuffle(free)
        while len(free) >= 2 and rng.random() < 0.7:
            i, j = sorted((free.pop(), free.pop()))
            c[(i, j)] = 1
            if rng.random() < 0.5:
                c[(i, i)] = 1
        for k in free:
            if rng.random() < 0.4:
                c[(k, k)] = 1
        q = QuadraticForm(n, c)
        ok, viol = is_normal(q)
        comps = NormalForm.from_form(q).components
        for v in viol:
            if v.condition == "C1":
                s, t = v.indices
                cs = next(x for x in comps if x.i == s)
                ct = next(x for x in comps if x.i == t)
                assert cs.pure_square and ct.eps and s < t
            elif v.condition == "C2":
                (s, _), (t, _) = v.indices
                a = next(x for x in comps if x.i == s)
                b = next(x for x in comps if x.i == t)
                assert a.i < b.i < b.j < a.j and a.eps and b.eps
        assert ok == (not viol)


@pytest.mark.parametrize("src, want", [
    ("x1^2 + x1*x2 + x2^2", "x1^2 + x1*x2"),
    ("x2^2 + x1*x2", "x1*x2"),
    ("x1^2 + x2^2 + x2*x3", "x1^2 + x2*x3"),
    ("x1^2 + x1*x4 + x2^2 + x2*x3", "x1^2 + x1*x4 + x2*x3"),
])
def test_normalize_examples(src, want):
    q = parse_form(src)
    res, _ = check(q)
    assert res == nf(want, q.n)


def test_normalize_omega_witness():
    res, w = check(parse_form("x1^2 + x1*x2 + x2^2"))
    assert w.level() == 1
    assert w.entry(1, 2) in (FieldElement(2, 1), FieldElement(3, 1))


def test_normalize_zero():
    res, w = normalize(QuadraticForm(3))
    assert res.components == () and w.is_identity()


def test_idempotent_on_census():
    for n in range(7):
        for f in enumerate_normal_forms(n):
            res, w = normalize(f.as_form())
            assert res == f
            assert w.is_identity()


def test_log_records_steps():
    log = []
    normalize(parse_form("x1^2 + x2^2 + x2*x3"), log)
    assert log


def test_extend_examples():
    assert extend(nf("x1^2 + x2*x3")) == nf("x1^2 + x1*x4 + x2*x3")
    e = extend(nf("x1*x2", 3))
    assert e.n == 4 and e.pairs() == [(1, 2)]
    big = extend(nf(DIAGRAM2))
    assert big.n == 10 and (7, 10) in big.pairs()
    with pytest.raises(InvalidInput):
        extend(nf("x1^2 + x2^2"))


def test_extend_restrict_compatibility():
    for n in range(1, 7):
        for f in enumerate_normal_forms(n):
            if len(f.pure_squares()) > 1:
                continue
            e = extend(f)
            assert restrict(e) == f
            assert normalize(e.as_form())[0] == e
            assert is_normal(e.as_form())[0]


def test_extend_preserves_normality_both_ways():
    # q normal iff its extension is, on 0/1 component systems with one pure square
    rng = random.Random(9)
    for _ in range(300):
        n = rng.randrange(2, 7)
        idx = list(range(1, n + 1))
        rng.shuffle(idx)
        c = {(idx[0], idx[0]): 1}
        rest = idx[1:]
        while len(rest) >= 2:
            i, j = sorted((rest.pop(), rest.pop()))
            c[(i, j)] = 1
            if rng.random() < 0.5:
                c[(i, i)] = 1
        f = NormalForm.from_form(QuadraticForm(n, c))
        assert is_normal(f.as_form())[0] == is_normal(extend(f).as_form())[0]


def test_brank_examples():
    assert brank(nf("x1^2 + x1*x3 + x2^2")) == 3
    assert brank(nf("x1*x2")) == 1
    assert brank(NormalForm(2)) == 0
    for n in range(7):
        for f in enumerate_normal_forms(n):
            assert 0 <= brank(f) <= n
            full = all(c.eps for c in f.components) and len(f.pure_squares()) <= 1 and is_nondegenerate(f)
            assert (brank(f) == n) == full


def test_nondegenerate_examples():
    assert is_nondegenerate(nf("x1^2 + x1*x2 + x3^2"))
    assert not is_nondegenerate(nf("x1*x2", 3))
    assert is_nondegenerate(nf("x1^2 + x2*x3"))


def test_connected_components():
    assert cc(nf(DIAGRAM2)) == 2
    assert cc(nf("x1^2 + x1*x2 + x3^2 + x3*x4")) == 2
    assert cc(nf("x1^2 + x1*x3 + x2^2 + x2*x4")) == 1
    parts = connected_components(nf(DIAGRAM2))
    assert [p.ind() for p in parts] == [{1, 2, 3, 4, 5, 6}, {7, 8, 9}]
    with pytest.raises(InvalidInput):
        cc(nf("x1*x2", 3))
    with pytest.raises(InvalidInput):
        cc(nf("x1^2 + x1*x4 + x2^2 + x2*x3"))


def test_arc_diagram():
    d = arc_diagram(nf("x1^2 + x1*x2"))
    assert d.arcs == {(1, 2)} and d.filled == {1}
    e = arc_diagram(NormalForm(0))
    assert not e.arcs and not e.filled


def test_mountain_range():
    c = {}
    for i, j in MOUNTAIN:
        c[(i, i)] = c[(i, j)] = 1
    f = NormalForm.from_form(QuadraticForm(14, c))
    assert in_qn(f) and cc(f) == 1
    p = dyck_path(f)
    assert str(p) == "UUDUUUDDUDDUDD"
    assert p.touches() == [0, 14]
    assert min(p.heights()) == 0


def test_dyck_paths_balanced():
    for n in range(1, 11):
        for f in enumerate_qn(n):
            h = dyck_path(f).heights()
            assert h[-1] == 0 and min(h) >= 0
            touches = dyck_path(f).touches()
            assert len(touches) - 1 == cc(f)


def test_emitters():
    f = nf(DIAGRAM2)
    art = diagram_ascii(f)
    assert art.splitlines()[-2].startswith("*  o  o  *")
    assert diagram_dot(f).count("--") == 4
    assert diagram_tikz(f).count("to[out") == 4


def rand_form(rng, n, level):
    f = 1 << (1 << level)
    return QuadraticForm(n, {(a, b): rng.randrange(f) for a in range(1, n + 1) for b in range(a, n + 1)})


def rand_borel(rng, n, level):
    f = 1 << (1 << level)
    return GroupElement([[rng.randrange(1, f) if a == b else (rng.randrange(f) if b > a else 0)
                          for b in range(n)] for a in range(n)])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.integers(0, 1), st.integers(0, 2**32))
def test_orbit_invariance(n, level, seed):
    rng = random.Random(seed)
    q = rand_form(rng, n, level)
    b = rand_borel(rng, n, level)
    a, _ = check(q)
    c, _ = check(act(b, q))
    assert a == c


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32))
def test_witness_sound_at_level_two(n, seed):
    check(rand_form(random.Random(seed), n, 2))
