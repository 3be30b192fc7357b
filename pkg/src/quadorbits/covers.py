"""Stabilizers of maximal-rank forms, their double covers, and the S_n action.

Throughout, q is in Q_n: nondegenerate with B-rank n.  For odd n the single
pure square x_p^2 is treated as the pair (p, n+1) of the extended form.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import NamedTuple, Optional

from .forms import reflect
from .normal import (
    InvalidInput, NormalComponent, NormalForm, extend, in_qn, normalize,
    split_blocks,
)
from .tower import _mul


# ---------------------------------------------------------------------------
# necessary conditions on stabilizer entries

class Constraint(NamedTuple):
    entry: tuple
    reason: str


def theorem2_constraints(nf):
    """Entries b_{k,l} (k < l) that vanish on every stabilizer element.

    A pure square x_p^2 is read as the pair (p, n+1), so its row carries no
    condition of the first kind.
    """
    comps = list(nf.components)
    out = []
    seen = set()
    js = []
    for c in comps:
        if c.delta:
            js.append(c.j)
            for z in range(c.j + 1, nf.n + 1):
                if z not in js and (c.j, z) not in seen:
                    seen.add((c.j, z))
                    out.append(Constraint((c.j, z), f"row of right end {c.j}"))
    for t, ct in enumerate(comps):
        if not ct.eps:
            continue
        for cs in comps[:t]:
            if cs.eps and (cs.i, ct.i) not in seen:
                seen.add((cs.i, ct.i))
                out.append(Constraint((cs.i, ct.i), f"squares at {cs.i} and {ct.i}"))
    return out


# ---------------------------------------------------------------------------
# blocks of a form in Q_n

@dataclass(frozen=True)
class Block:
    lo: int
    hi: int
    pairs: tuple          # (i, j) in the extended diagram
    odd: bool             # contains the pair (p, n+1)


def _extended(nf):
    if not in_qn(nf):
        raise InvalidInput(f"{nf} is not in Q_n")
    return extend(nf) if nf.n % 2 else nf


def blocks(nf):
    ext = _extended(nf)
    out = []
    for lo, hi in split_blocks(ext.pairs(), ext.n):
        pairs = tuple(p for p in ext.pairs() if lo <= p[0] <= hi)
        out.append(Block(lo, hi, pairs, nf.n % 2 == 1 and hi == ext.n))
    return out


def tag_blocks(nf):
    return [b for b in blocks(nf) if not b.odd]


def component_count(nf):
    f = len(blocks(nf))
    return 2 ** f if nf.n % 2 == 0 else 2 ** (f - 1)


# ---------------------------------------------------------------------------
# stabilizer presentation

@dataclass
class StabilizerPresentation:
    n: int
    zero_entries: set = field(default_factory=set)
    symmetry_pairs: set = field(default_factory=set)
    free_entries: set = field(default_factory=set)
    component_relations: list = field(default_factory=list)
    square_relations: list = field(default_factory=list)
    as_coupling: Optional[dict] = None

    def satisfied_by(self, rows):
        """Whether a matrix (rows of bit-integers) satisfies every relation."""
        n = self.n
        for a in range(n):
            for b in range(n):
                v = rows[a][b]
                if b < a and v or a == b and v != 1:
                    return False
        get = lambda e: rows[e[0] - 1][e[1] - 1]
        if any(get(e) for e in self.zero_entries):
            return False
        for pair in self.symmetry_pairs:
            a, b = tuple(pair)
            if get(a) != get(b):
                return False
        for lhs, rhs in self.square_relations:
            u = get(lhs)
            r = 0
            for e in rhs:
                x = get(e)
                r ^= _mul(x, x)
            if _mul(u, u) ^ u != r:
                return False
        for rel in self.component_relations:
            s = 0
            for e in rel["indices"]:
                s ^= get(e)
            if rel["kind"] == "binary_tag" and s not in (0, 1):
                return False
            if rel["kind"] == "as_coupled":
                t = 0
                for e in rel["right"]:
                    t ^= get(e)
                if _mul(s, s) ^ s != _mul(t, t):
                    return False
        return True

    def solutions(self, level):
        """Every unipotent matrix over L_level satisfying the presentation."""
        n = self.n
        f = 1 << (1 << level)
        parent = {}

        def find(e):
            while parent.setdefault(e, e) != e:
                e = parent[e]
            return e

        upper = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        live = [e for e in upper if e not in self.zero_entries]
        zero = set(self.zero_entries)
        for pair in self.symmetry_pairs:
            a, b = tuple(pair)
            if a[0] > a[1] or a in zero:
                zero.add(b)
            if b[0] > b[1] or b in zero:
                zero.add(a)
            parent[find(a)] = find(b)
        live = [e for e in live if e not in zero]
        classes = sorted({find(e) for e in live})
        out = []
        for vals in product(range(f), repeat=len(classes)):
            assign = dict(zip(classes, vals))
            rows = [[int(a == b) for b in range(1, n + 1)] for a in range(1, n + 1)]
            for e in live:
                rows[e[0] - 1][e[1] - 1] = assign[find(e)]
            rows = tuple(tuple(r) for r in rows)
            if self.satisfied_by(rows):
                out.append(rows)
        return out


def stabilizer_presentation(nf):
    n = nf.n
    bl = blocks(nf)
    p = next((c.i for c in nf.components if c.pure_square), None)
    pres = StabilizerPresentation(n)
    where = {}
    for k, b in enumerate(bl):
        for x in range(b.lo, min(b.hi, n) + 1):
            where[x] = k
    lefts = {i for b in bl for i, _ in b.pairs}
    rights = {j for b in bl for _, j in b.pairs if j <= n}
    for a in range(1, n + 1):
        for c in range(a + 1, n + 1):
            if where[a] != where[c]:
                pres.zero_entries.add((a, c))
            elif a in rights:
                pres.zero_entries.add((a, c))
            elif a in lefts and c in lefts:
                pres.zero_entries.add((a, c))
    for b in bl:
        real = [(i, j) for i, j in b.pairs if j <= n]
        for (i1, j1), (i2, j2) in combinations(real, 2):
            pres.symmetry_pairs.add(frozenset({(i1, j2), (i2, j1)}))
        for i, j in real:
            rhs = [(i2, j) for i2, _ in real if i2 != i and i2 < j]
            if b.odd and p < j:
                rhs.append((p, j))
                pres.free_entries.add((p, j))
            pres.square_relations.append(((i, j), tuple(rhs)))
        if b.odd:
            if real:
                rel = {"indices": tuple(real), "kind": "as_coupled",
                       "right": tuple((p, j) for _, j in real if p < j)}
                pres.component_relations.append(rel)
                pres.as_coupling = {"left": rel["indices"], "right": rel["right"]}
        else:
            pres.component_relations.append({"indices": tuple(real), "kind": "binary_tag"})
    # entries neither forced to zero nor tied by symmetry
    tied = {e for pair in pres.symmetry_pairs for e in pair}
    for a in range(1, n + 1):
        for c in range(a + 1, n + 1):
            if (a, c) not in pres.zero_entries and (a, c) not in tied:
                pres.free_entries.add((a, c))
    return pres


def phi(nf, rows):
    """Tag vector of a stabilizer element: sum of u_{i_t j_t} per tag block."""
    out = []
    for b in tag_blocks(nf):
        s = 0
        for i, j in b.pairs:
            s ^= rows[i - 1][j - 1]
        out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# covers and labels

def label_size(n):
    """Size of a cover label: the number of pairs of the extended diagram."""
    return (n + 1) // 2


@dataclass(frozen=True, order=True)
class CoverLabel:
    n: int
    m: tuple

    def __post_init__(self):
        m = tuple(sorted(self.m))
        object.__setattr__(self, "m", m)
        if len(set(m)) != len(m) or any(not 1 <= x <= self.n for x in m):
            raise ValueError(f"{m} is not a subset of 1..{self.n}")
        if len(m) != label_size(self.n):
            raise ValueError(f"label for n={self.n} needs {label_size(self.n)} elements")

    def __str__(self):
        return "{" + ",".join(map(str, self.m)) + "}"


@dataclass(frozen=True)
class ZElement:
    q: NormalForm
    eps: tuple


def all_labels(n):
    return [CoverLabel(n, c) for c in combinations(range(1, n + 1), label_size(n))]


def pi(z):
    m = []
    for b, e in zip(tag_blocks(z.q), z.eps):
        m.extend(j if e else i for i, j in b.pairs)
    for b in blocks(z.q):
        if b.odd:
            m.extend(i for i, _ in b.pairs)
    return CoverLabel(z.q.n, tuple(m))


def pi_inv(label):
    n = label.n
    top = n + 1 if n % 2 else n
    m = list(label.m)
    mbar = [x for x in range(1, top + 1) if x not in m]
    pairs = [tuple(sorted(p)) for p in zip(m, mbar)]
    comps = []
    for i, j in pairs:
        comps.append(NormalComponent(i, i, 1, 0) if j == n + 1 else NormalComponent(i, j, 1, 1))
    q = NormalForm(n, tuple(comps))
    ms = set(m)
    eps = []
    for b in tag_blocks(q):
        sides = {i in ms for i, _ in b.pairs}
        if len(sides) != 1:
            raise AssertionError(f"label {label} splits block {b.pairs}")
        eps.append(0 if sides.pop() else 1)
    return ZElement(q, tuple(eps))


def covers(nf):
    return [pi(ZElement(nf, e)) for e in product((0, 1), repeat=len(tag_blocks(nf)))]


def rho(label):
    return pi_inv(label)


# ---------------------------------------------------------------------------
# Weyl group action

def weyl_apply(w, label):
    """w[t-1] is the image of t."""
    return CoverLabel(label.n, tuple(w[x - 1] for x in label.m))


def simple(n, i):
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def weyl_orbit_graph(n):
    """(vertices, edges) with an s_i edge between m and s_i m when they differ."""
    verts = all_labels(n)
    edges = []
    for m in verts:
        for i in range(1, n):
            m2 = weyl_apply(simple(n, i), m)
            if m2 != m and m < m2:
                edges.append((m, m2, i))
    return verts, edges


@dataclass(frozen=True)
class KnopRecord:
    case: str
    required_phi: str
    computed_phi: str
    target_ok: bool

    @property
    def ok(self):
        return self.required_phi == self.computed_phi and self.target_ok


def knop_case(label, i):
    from .parabolic import p_orbit_decompose
    n = label.n
    z = pi_inv(label)
    q = z.q
    moved = weyl_apply(simple(n, i), label)
    computed = p_orbit_decompose(q, i).computed_phi
    if (i, i + 1) in q.pairs():
        z2 = pi_inv(moved)
        flips = [a != b for a, b in zip(z.eps, z2.eps)]
        ok = z2.q == q and sum(flips) == 1 and moved != label
        return KnopRecord("toggle", "N0", computed, ok)
    if moved == label:
        bl = blocks(q)
        same = any(b.lo <= i and i + 1 <= b.hi for b in bl)
        return KnopRecord("fixed", "T0" if same else "U0", computed, True)
    target = pi_inv(moved).q
    ok = target == normalize(reflect(i, q.as_form()))[0]
    return KnopRecord("move", "U0", computed, ok)


def cover_table(n):
    """Rows (q, eps, label, relations) for every q in Q_n."""
    from .census import enumerate_qn
    rows = []
    for q in enumerate_qn(n):
        for e in product((0, 1), repeat=len(tag_blocks(q))):
            z = ZElement(q, e)
            rel = [f"sum u over {list(b.pairs)} = {x}" for b, x in zip(tag_blocks(q), e)]
            rows.append((q, e, pi(z), rel))
    return rows
