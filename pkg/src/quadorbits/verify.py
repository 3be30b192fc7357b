"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a :class:`Report` with a pass/fail flag, the number of
items checked and a (truncated) list of counterexamples.
"""

from dataclasses import dataclass, field
from itertools import product
from math import comb

from . import census as cen
from . import covers as cov
from . import oracle as orc
from .forms import act
from .normal import brank, is_nondegenerate, normalize
from .parabolic import p_orbit_decompose


@dataclass
class Report:
    name: str
    scope: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, item):
        self.failures.append(item)

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f", {len(self.failures)} failures, first: {self.failures[0]}" if self.failures else ""
        return f"{self.name} [{self.scope}]: {status}, {self.checked} checked{extra}"

    def as_dict(self):
        return {"suite": self.name, "scope": self.scope, "ok": self.ok,
                "checked": self.checked, "failures": [str(f) for f in self.failures[:20]]}


def fibers(n, level=0):
    r = Report("fibers", f"n={n}, level={level}")
    rep = orc.fiber_check(n, level, census_count=len(cen.enumerate_normal_forms(n)))
    r.checked = rep["forms"]
    for q in rep["witness_failures"]:
        r.fail(f"witness: {q}")
    for q, a, b in rep["constancy_failures"]:
        r.fail(f"orbit of {q}: {a} vs {b}")
    if rep["images"] != len(cen.enumerate_normal_forms(n)):
        r.fail(f"{rep['images']} images vs census {len(cen.enumerate_normal_forms(n))}")
    return r


def triangle(n):
    r = Report("triangle", f"n<={n}")
    rep = cen.verify_triangle_identity(n)
    r.checked = rep["checked"]
    r.failures = list(rep["failures"])
    return r


def counts(n):
    r = Report("counts", f"n<={n}")
    for k in range(1, n + 1):
        rep = cen.counts_report(k)
        r.checked += 1
        if not rep["ok"]:
            r.fail(rep)
    return r


def covers(n):
    r = Report("covers", f"n<={n}")
    for k in range(1, n + 1):
        total = sum(len(cov.covers(q)) for q in cen.enumerate_qn(k))
        r.checked += 1
        if total != comb(k, k // 2):
            r.fail(f"n={k}: {total} covers")
        for m in cov.all_labels(k):
            r.checked += 1
            z = cov.pi_inv(m)
            if cov.pi(z) != m or cov.pi_inv(cov.pi(z)) != z:
                r.fail(f"round trip {m}")
    return r


def weyl_laws(n):
    r = Report("weyl-laws", f"n<={n}")
    for k in range(2, n + 1):
        s = {i: cov.simple(k, i) for i in range(1, k)}
        ap = cov.weyl_apply
        for m in cov.all_labels(k):
            for i in range(1, k):
                r.checked += 1
                if ap(s[i], ap(s[i], m)) != m:
                    r.fail(f"s_{i}^2 on {m}")
                for j in range(i + 1, k):
                    if j - i >= 2 and ap(s[i], ap(s[j], m)) != ap(s[j], ap(s[i], m)):
                        r.fail(f"s_{i} s_{j} on {m}")
                if i + 1 < k:
                    a = ap(s[i], ap(s[i + 1], ap(s[i], m)))
                    b = ap(s[i + 1], ap(s[i], ap(s[i + 1], m)))
                    if a != b:
                        r.fail(f"braid {i} on {m}")
    return r


def knop(n):
    r = Report("knop", f"n={n}")
    for m in cov.all_labels(n):
        for i in range(1, n):
            r.checked += 1
            rec = cov.knop_case(m, i)
            if not rec.ok:
                r.fail(f"{m} i={i}: {rec}")
    return r


def stabilizers(n, level=0):
    r = Report("stabilizers", f"n={n}, level={level}")
    for q in cen.enumerate_qn(n):
        r.checked += 1
        form = q.as_form()
        cons = [c.entry for c in cov.theorem2_constraints(q)]
        bf = orc.stabilizer_bruteforce(form, level, cons)
        pres = cov.stabilizer_presentation(q)
        if set(bf) != set(pres.solutions(level)):
            r.fail(f"{q}: presentation differs from brute force")
        for u, v in product(bf, repeat=2):
            uv = tuple(tuple(row) for row in _matmul(u, v))
            a, b, c = cov.phi(q, u), cov.phi(q, v), cov.phi(q, uv)
            if tuple(x ^ y for x, y in zip(a, b)) != c:
                r.fail(f"{q}: phi not additive")
                break
    return r


def _matmul(u, v):
    from .tower import _mul
    n = len(u)
    return [[_xor(_mul(u[a][t], v[t][b]) for t in range(n)) for b in range(n)] for a in range(n)]


def _xor(it):
    s = 0
    for x in it:
        s ^= x
    return s


def component_fit(n):
    r = Report("component-fit", f"n={n}")
    for q in cen.enumerate_qn(n):
        r.checked += 1
        cons = [c.entry for c in cov.theorem2_constraints(q)]
        c, _ = orc.stabilizer_cardinality_fit(q.as_form(), cons)
        if c != cov.component_count(q):
            r.fail(f"{q}: fit {c} vs {cov.component_count(q)}")
    return r


def brank_check(n, level=1):
    r = Report("brank", f"n={n}, level={level}")
    units = orc.field_size(level) - 1
    for q in cen.enumerate_normal_forms(n):
        r.checked += 1
        size = orc.torus_projection_size(q.as_form(), level)
        if size != units ** (n - brank(q)):
            r.fail(f"{q}: |pi(B_q)| = {size}")
    return r


def nondegeneracy(n):
    r = Report("nondegeneracy", f"n={n}")
    for q in cen.enumerate_normal_forms(n):
        r.checked += 1
        if orc.nondegeneracy_bruteforce(q.as_form()) != is_nondegenerate(q):
            r.fail(str(q))
    return r


def parabolic_literal(n, level):
    """P_i(F) q equals the union of the B(F)-orbits of the representatives."""
    r = Report("parabolic-literal", f"n={n}, level={level}")
    table = orc.enumerate_b_orbits(n, level)
    for q in cen.enumerate_normal_forms(n):
        for i in range(1, n):
            r.checked += 1
            d = p_orbit_decompose(q, i)
            ids = [table.orbit_of(x.as_form()) for x in d.reps]
            bf = orc.parabolic_bruteforce(q.as_form(), i, level)
            if len(set(ids)) != len(ids):
                r.fail(f"{q} i={i}: two representatives share an orbit")
            elif set(ids) != bf:
                extra = sorted(str(table.representative(x)) for x in bf - set(ids))
                r.fail(f"{q} i={i}: extra B(F)-orbits {extra}")
    return r


def parabolic_images(n, level):
    """Normal forms met by P_i(F) q are exactly the representatives."""
    r = Report("parabolic-images", f"n={n}, level={level}")
    table = orc.enumerate_b_orbits(n, level)
    for q in cen.enumerate_normal_forms(n):
        for i in range(1, n):
            r.checked += 1
            d = p_orbit_decompose(q, i)
            reps = {x.text() for x in d.reps}
            ids = {table.orbit_of(x.as_form()) for x in d.reps}
            bf = orc.parabolic_bruteforce(q.as_form(), i, level)
            if len(ids) != len(reps) or not ids <= bf:
                r.fail(f"{q} i={i}: representatives not separated or not inside P q")
            elif orc.parabolic_normal_images(q.as_form(), i, level) != reps:
                r.fail(f"{q} i={i}: normal images differ")
    return r


def witness_random(n, samples, rng, level=1):
    """normalize(act(b, q)) == normalize(q) for random Borel b and forms q."""
    from .forms import GroupElement, QuadraticForm
    r = Report("orbit-invariance", f"n={n}, level={level}, samples={samples}")
    bits = 1 << level
    f = 1 << bits
    for _ in range(samples):
        c = {(a, b): rng.randrange(f) for a in range(1, n + 1) for b in range(a, n + 1)}
        q = QuadraticForm(n, c)
        rows = [[rng.randrange(1, f) if a == b else (rng.randrange(f) if b > a else 0)
                 for b in range(n)] for a in range(n)]
        g = GroupElement(rows, "borel", check=False)
        r.checked += 1
        nf1, w1 = normalize(q)
        q2 = act(g, q)
        nf2, w2 = normalize(q2)
        if nf1 != nf2 or act(w2, q2) != nf2.as_form():
            r.fail(f"{q} under {g.rows}")
    return r


SUITES = {
    "fibers": lambda n, lv: [fibers(n, lv)],
    "triangle": lambda n, lv: [triangle(n)],
    "counts": lambda n, lv: [counts(n)],
    "covers": lambda n, lv: [covers(n)],
    "weyl": lambda n, lv: [weyl_laws(n)],
    "knop": lambda n, lv: [knop(n)],
    "stabilizers": lambda n, lv: [stabilizers(n, lv)],
    "component-fit": lambda n, lv: [component_fit(n)],
    "brank": lambda n, lv: [brank_check(n, lv)],
    "nondegeneracy": lambda n, lv: [nondegeneracy(n)],
    "parabolic": lambda n, lv: [parabolic_images(n, lv)],
    "parabolic-literal": lambda n, lv: [parabolic_literal(n, lv)],
}
