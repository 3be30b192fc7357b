"""Exhaustive finite-field ground truth over F_2 (level 0) and F_4 (level 1).

Forms are packed into integers: monomials in lexicographic order, 2^level
bits per coefficient.  Each group generator acts F_2-linearly on the packed
vectors, so its action on the whole space V_n(F) is built as one lookup array
by linearity; orbits are the connected components of the resulting graph.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .forms import GroupElement, QuadraticForm, act
from .tower import _inv, _mul, level_of

GUARD_BITS = 36


class GuardExceeded(ValueError):
    pass


def field_size(level):
    return 1 << (1 << level)


def borel_order(n, level):
    f = field_size(level)
    return (f - 1) ** n * f ** (n * (n - 1) // 2)


class FormSpace:
    """V_n(F) with packing, unpacking and generator lookup tables."""

    def __init__(self, n, level):
        self.n = n
        self.level = level
        self.w = 1 << level
        self.monomials = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        self.index = {m: k for k, m in enumerate(self.monomials)}
        self.bits = self.w * len(self.monomials)
        self.size = 1 << self.bits

    def encode(self, q):
        x = 0
        for (i, j), v in q._c.items():
            if level_of(v) > self.level:
                raise ValueError(f"{q} has coefficients outside level {self.level}")
            x |= v << (self.w * self.index[(i, j)])
        return x

    def decode(self, x):
        x = int(x)
        mask = (1 << self.w) - 1
        c = {}
        for k, m in enumerate(self.monomials):
            v = (x >> (self.w * k)) & mask
            if v:
                c[m] = v
        return QuadraticForm._raw(self.n, c)

    def table(self, g):
        """Array T with T[x] = encode(act(g, decode(x)))."""
        out = np.zeros(self.size, dtype=np.int64)
        for b in range(self.bits):
            k, p = divmod(b, self.w)
            img = self.encode(act(g, QuadraticForm._raw(self.n, {self.monomials[k]: 1 << p})))
            half = 1 << b
            out[half:2 * half] = out[:half] ^ img
        return out


def borel_generators(n, level):
    """Transvections x_k -> x_k + x_l (k < l) and scalings by a generator of F^*."""
    gens = []
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            gens.append(GroupElement.elementary(n, {k: {k: 1, l: 1}}))
    if level >= 1:
        unit = 2 if level == 1 else _primitive(level)
        for k in range(1, n + 1):
            gens.append(GroupElement.elementary(n, {k: {k: unit}}))
    return gens


def _primitive(level):
    f = field_size(level)
    for g in range(2, f):
        x, order = g, 1
        while x != 1:
            x = _mul(x, g)
            order += 1
        if order == f - 1:
            return g
    raise ValueError("no primitive element")


def _guard(n, level, budget=GUARD_BITS):
    space = FormSpace(n, level)
    if space.bits + np.log2(borel_order(n, level)) > budget:
        raise GuardExceeded(f"n={n}, level={level} exceeds the 2^{budget} feasibility guard")
    return space


@dataclass
class OrbitTable:
    n: int
    level: int
    space: FormSpace
    labels: np.ndarray
    count: int

    def orbit_of(self, q):
        return int(self.labels[self.space.encode(q)])

    def members(self, label):
        return np.flatnonzero(self.labels == label)

    def representative(self, label):
        """Member with the smallest packed value."""
        return self.space.decode(self.members(label)[0])

    def orbits(self):
        order = np.argsort(self.labels, kind="stable")
        bounds = np.flatnonzero(np.diff(self.labels[order])) + 1
        return np.split(order, bounds)


def _components(space, tables):
    size = space.size
    rows = np.tile(np.arange(size, dtype=np.int64), len(tables))
    cols = np.concatenate(tables) if tables else np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    return connected_components(graph, directed=True, connection="weak")


@lru_cache(maxsize=16)
def _borel_tables(n, level):
    space = _guard(n, level)
    return space, tuple(space.table(g) for g in borel_generators(n, level))


@lru_cache(maxsize=16)
def enumerate_b_orbits(n, level):
    space, tables = _borel_tables(n, level)
    count, labels = _components(space, list(tables))
    return OrbitTable(n, level, space, labels, count)


@lru_cache(maxsize=64)
def _parabolic_labels(n, i, level):
    space, tables = _borel_tables(n, level)
    s = space.table(GroupElement.reflection(n, i))
    return _components(space, list(tables) + [s])[1]


def _parabolic_guard(n, level):
    if level == 1 and n > 3 or level == 0 and n > 5 or level > 1:
        raise GuardExceeded("parabolic closure limited to n <= 3 over F_4 and n <= 5 over F_2")


def parabolic_members(q, i, level):
    """Packed members of the P_i(F)-orbit of q."""
    _parabolic_guard(q.n, level)
    table = enumerate_b_orbits(q.n, level)
    plabels = _parabolic_labels(q.n, i, level)
    return np.flatnonzero(plabels == plabels[table.space.encode(q)])


def parabolic_normal_images(q, i, level):
    """Normal forms (as text) of the B(F)-orbits inside P_i(F) q."""
    from .normal import normalize
    table = enumerate_b_orbits(q.n, level)
    members = parabolic_members(q, i, level)
    out = set()
    for label in np.unique(table.labels[members]):
        rep = table.space.decode(table.members(label)[0])
        out.add(normalize(rep)[0].text())
    return out


def parabolic_bruteforce(q, i, level):
    """B(F)-orbit ids making up the P_i(F)-orbit of q."""
    n = q.n
    _parabolic_guard(n, level)
    table = enumerate_b_orbits(n, level)
    plabels = _parabolic_labels(n, i, level)
    x = table.space.encode(q)
    members = plabels == plabels[x]
    return set(np.unique(table.labels[members]).tolist())


def fiber_check(n, level=0, normalize=None, census_count=None):
    """Normalize every form of V_n(F): witness, constancy and image count."""
    if normalize is None:
        from .normal import normalize
    table = enumerate_b_orbits(n, level)
    space = table.space
    images = {}
    witness_failures = []
    constancy_failures = []
    for orbit in table.orbits():
        seen = None
        for x in orbit:
            q = space.decode(x)
            nf, b = normalize(q)
            f = nf.as_form()
            if not b.is_borel() or act(b, q) != f:
                witness_failures.append(str(q))
            if seen is None:
                seen = f
            elif f != seen:
                constancy_failures.append((str(q), str(f), str(seen)))
        images[seen] = True
    report = {
        "n": n, "level": level, "forms": space.size, "orbits": table.count,
        "images": len(images), "witness_failures": witness_failures,
        "constancy_failures": constancy_failures,
    }
    report["ok"] = not witness_failures and not constancy_failures and (
        census_count is None or census_count == len(images))
    return report


# ---------------------------------------------------------------------------
# stabilizers

def _polar(q, u, v):
    return q.evaluate([a ^ b for a, b in zip(u, v)]) ^ q.evaluate(u) ^ q.evaluate(v)


def _column_ok(q, cols, a, col):
    if q.evaluate(col) != q.coef_bits(a, a):
        return False
    for a2 in range(1, a):
        if _polar(q, cols[a2 - 1], col) != q.coef_bits(a2, a):
            return False
    return True


def _stab_dfs(q, level, forced_zero, diag=None, first_only=False):
    """Column-major search for upper-triangular b with act(b, q) = q."""
    n = q.n
    f = field_size(level)
    units = range(1, f)
    out = []
    cols = []

    def rec(a):
        if a > n:
            out.append(tuple(zip(*cols)))
            return first_only
        options = []
        for t in range(1, a):
            options.append((0,) if (t, a) in forced_zero else range(f))
        dvals = (diag[a - 1],) if diag is not None else units
        for upper in product(*options):
            for d in dvals:
                col = list(upper) + [d] + [0] * (n - a)
                if _column_ok(q, cols, a, col):
                    cols.append(col)
                    stop = rec(a + 1)
                    cols.pop()
                    if stop:
                        return True
        return False

    rec(1)
    return out


def _stab_guard(n, level):
    if level == 0 and n > 6 or level == 1 and n > 5 or level > 1:
        raise GuardExceeded("stabilizer search limited to n <= 6 over F_2 and n <= 5 over F_4")


def stabilizer_bruteforce(q, level, constraints=None):
    """All b in B(F) fixing q, as row tuples of bit-integers.

    ``constraints`` is an iterable of entries (k, l) known to vanish on every
    stabilizer element; they prune the search.
    """
    _stab_guard(q.n, level)
    forced = set(constraints or ())
    return _stab_dfs(q, level, forced)


def stabilizer_cardinality_fit(q, constraints=None):
    """(c, d) with |B_q(F_{2^k})| = c * 2^(k d) for k = 1, 2."""
    n1 = len(stabilizer_bruteforce(q, 0, constraints))
    n2 = len(stabilizer_bruteforce(q, 1, constraints))
    ratio = n2 // n1
    d = ratio.bit_length() - 1
    if 1 << d != ratio or n1 * n1 % n2:
        raise ValueError(f"counts {n1}, {n2} do not fit c * 2^(k d)")
    return n1 * n1 // n2, d


def torus_projection_size(q, level, constraints=None):
    """Number of diagonals of stabilizer elements over F."""
    _stab_guard(q.n, level)
    forced = set(constraints or ())
    units = range(1, field_size(level))
    hits = 0
    for diag in product(units, repeat=q.n):
        if _stab_dfs(q, level, forced, diag=diag, first_only=True):
            hits += 1
    return hits


# ---------------------------------------------------------------------------
# nondegeneracy

def _kernel(rows, n):
    """Basis of {v : M v = 0} over the tower, M given by rows of bit-integers."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(m)) if m[k][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = _inv(m[r][col])
        m[r] = [_mul(v, s) for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][col]:
                fk = m[k][col]
                m[k] = [a ^ _mul(fk, b) for a, b in zip(m[k], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = m[k][fc]
        basis.append(v)
    return basis


def radical(q):
    n = q.n
    rows = [[q.coef_bits(a, b) if a != b else 0 for b in range(1, n + 1)] for a in range(1, n + 1)]
    return _kernel(rows, n)


def nondegeneracy_bruteforce(q, level=0):
    """No nonzero vector of the polar radical (over F) is a zero of q."""
    if q.n > 8:
        raise GuardExceeded("nondegeneracy check limited to n <= 8")
    level = max(level, q.level())
    basis = radical(q)
    f = field_size(level)
    for coeffs in product(range(f), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * q.n
        for c, b in zip(coeffs, basis):
            if c:
                v = [x ^ _mul(c, y) for x, y in zip(v, b)]
        if q.evaluate(v) == 0:
            return False
    return True


def unipotent_stabilizer_size(q, level, constraints=None):
    """|U_q(F)|: stabilizer elements with unit diagonal."""
    _stab_guard(q.n, level)
    return len(_stab_dfs(q, level, set(constraints or ()), diag=(1,) * q.n))


def orbit_dimension_estimate(q, brank):
    """dim B - dim B_q, reading dim U_q off |U_q(F_4)| / |U_q(F_2)|."""
    n = q.n
    ratio = unipotent_stabilizer_size(q, 1) // unipotent_stabilizer_size(q, 0)
    du = ratio.bit_length() - 1
    return n * (n + 1) // 2 - (n - brank) - du
