from itertools import product
from math import comb

import pytest

from quadorbits import oracle
from quadorbits.census import enumerate_normal_forms, enumerate_qn
from quadorbits.covers import (
    CoverLabel, ZElement, all_labels, blocks, component_count, cover_table,
    covers, knop_case, label_size, phi, pi, pi_inv, rho, simple,
    stabilizer_presentation, theorem2_constraints, weyl_apply, weyl_orbit_graph,
)
from quadorbits.normal import InvalidInput, NormalForm, cc
from quadorbits.tower import _mul

Q3 = "x1^2 + x1*x2 + x3^2"
P3 = "x1^2 + x1*x3 + x2^2"
Q4 = "x1^2 + x1*x2 + x3^2 + x3*x4"
P4 = "x1^2 + x1*x3 + x2^2 + x2*x4"


def nf(text, n=None):
    return NormalForm.parse(text, n)


def labels(text):
    return {str(m) for m in covers(nf(text))}


def matmul(u, v):
    n = len(u)
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            s = 0
            for t in range(n):
                s ^= _mul(u[a][t], v[t][b])
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def test_label_size():
    assert [label_size(n) for n in range(1, 7)] == [1, 1, 2, 2, 3, 3]
    with pytest.raises(ValueError):
        CoverLabel(4, (1,))
    with pytest.raises(ValueError):
        CoverLabel(4, (1, 5))


def test_sl3_covers():
    assert labels(Q3) == {"{1,3}", "{2,3}"}
    assert labels(P3) == {"{1,2}"}


def test_sl4_covers():
    assert labels(Q4) == {"{1,3}", "{1,4}", "{2,3}", "{2,4}"}
    assert labels(P4) == {"{1,2}", "{3,4}"}
    q = nf(Q4)
    assert str(pi(ZElement(q, (0, 1)))) == "{1,4}"
    assert str(pi(ZElement(nf(P4), (1,)))) == "{3,4}"


def test_m10_example():
    z = pi_inv(CoverLabel(10, (1, 3, 4, 9, 10)))
    assert z.q.pairs() == [(1, 2), (3, 5), (4, 6), (7, 9), (8, 10)]
    assert z.q.filled() == {1, 3, 4, 7, 8}
    assert z.eps == (0, 0, 1)
    assert rho(CoverLabel(10, (1, 3, 4, 9, 10))) == z


@pytest.mark.parametrize("n", range(1, 13))
def test_cover_count_and_round_trip(n):
    total = sum(len(covers(q)) for q in enumerate_qn(n))
    assert total == comb(n, n // 2) == len(all_labels(n))
    for m in all_labels(n):
        z = pi_inv(m)
        assert pi(z) == m


def test_component_count():
    assert component_count(nf(Q4)) == 4
    assert component_count(nf(P4)) == 2
    assert component_count(nf(Q3)) == 2
    assert component_count(nf(P3)) == 1
    for n in range(1, 9):
        for q in enumerate_qn(n):
            f = cc(q)
            assert component_count(q) == (2 ** f if n % 2 == 0 else 2 ** (f - 1))
            assert len(blocks(q)) == f


def test_blocks_need_qn():
    with pytest.raises(InvalidInput):
        blocks(nf("x1*x2"))


@pytest.mark.parametrize("n, level", [(2, 0), (3, 0), (4, 0), (2, 1), (3, 1)])
def test_presentation_matches_bruteforce(n, level):
    for q in enumerate_qn(n):
        bf = oracle.stabilizer_bruteforce(q.as_form(), level)
        pres = stabilizer_presentation(q)
        assert set(bf) == set(pres.solutions(level))
        assert all(pres.satisfied_by(u) for u in bf)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_phi_is_additive(n):
    for q in enumerate_qn(n):
        stab = oracle.stabilizer_bruteforce(q.as_form(), 0)
        for u, v in product(stab, repeat=2):
            a, b = phi(q, u), phi(q, v)
            assert tuple(x ^ y for x, y in zip(a, b)) == phi(q, matmul(u, v))
        assert len({phi(q, u) for u in stab}) == len(covers(q))


def test_constraints_necessary():
    # no pruning in the search, then every listed entry vanishes
    for n in range(1, 5):
        for q in enumerate_normal_forms(n):
            stab = oracle.stabilizer_bruteforce(q.as_form(), 0)
            for c in theorem2_constraints(q):
                k, l = c.entry
                assert all(u[k - 1][l - 1] == 0 for u in stab), (q, c)


def test_constraint_pure_square():
    # b_{1,3} survives on x1^2 + x2*x3: the pure square row is unconstrained
    q = nf("x1^2 + x2*x3")
    entries = {c.entry for c in theorem2_constraints(q)}
    assert (1, 3) not in entries and (3, 3) not in entries
    stab = oracle.stabilizer_bruteforce(q.as_form(), 0)
    assert any(u[0][2] for u in stab)


def test_cardinality_fit():
    for n in range(1, 5):
        for q in enumerate_qn(n):
            cons = [c.entry for c in theorem2_constraints(q)]
            c, _ = oracle.stabilizer_cardinality_fit(q.as_form(), cons)
            assert c == component_count(q)


def test_weyl_laws():
    for n in range(2, 9):
        s = {i: simple(n, i) for i in range(1, n)}
        for m in all_labels(n):
            for i in s:
                assert weyl_apply(s[i], weyl_apply(s[i], m)) == m
                for j in s:
                    if abs(i - j) >= 2:
                        assert weyl_apply(s[i], weyl_apply(s[j], m)) == weyl_apply(s[j], weyl_apply(s[i], m))
                if i + 1 in s:
                    a = weyl_apply(s[i], weyl_apply(s[i + 1], weyl_apply(s[i], m)))
                    b = weyl_apply(s[i + 1], weyl_apply(s[i], weyl_apply(s[i + 1], m)))
                    assert a == b


def test_weyl_graphs():
    def edges(n):
        return {(str(a), str(b), i) for a, b, i in weyl_orbit_graph(n)[1]}
    assert edges(3) == {("{1,2}", "{1,3}", 2), ("{1,3}", "{2,3}", 1)}
    assert edges(4) == {
        ("{1,3}", "{1,4}", 3), ("{1,3}", "{2,3}", 1), ("{1,4}", "{2,4}", 1),
        ("{2,3}", "{2,4}", 3), ("{2,4}", "{3,4}", 2), ("{1,2}", "{1,3}", 2),
    }


@pytest.mark.parametrize("n", range(2, 8))
def test_knop_correspondence(n):
    for m in all_labels(n):
        for i in range(1, n):
            rec = knop_case(m, i)
            assert rec.ok, (m, i, rec)


def test_knop_cases_sl4():
    assert knop_case(CoverLabel(4, (1, 3)), 1).case == "toggle"
    assert knop_case(CoverLabel(4, (1, 2)), 1).case == "fixed"
    rec = knop_case(CoverLabel(4, (1, 3)), 2)
    assert rec.case == "move" and rec.computed_phi == "U0"


def test_cover_table():
    rows = cover_table(4)
    assert len(rows) == 6
    assert {str(m) for _, _, m, _ in rows} == {str(m) for m in all_labels(4)}
