"""Borel normal forms of quadratic forms and their combinatorics.

A normal form is a sum of components eps*x_i^2 + delta*x_i*x_j on pairwise
disjoint index sets, subject to

* C1: after a pure square x_i^2, no later component carries a square;
* C2: if (i_t, j_t) sits strictly inside (i_s, j_s), not both carry a square.

:func:`normalize` returns the normal form of any form together with an
upper-triangular matrix b with ``act(b, q) == nf.as_form()``.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from .forms import GroupElement, QuadraticForm, act, parse_form
from .tower import FieldElement, _inv, _mul, _sqrt, artin_schreier_solve, format_element


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NormalComponent:
    i: int
    j: int
    eps: int
    delta: int

    def __post_init__(self):
        if (self.eps, self.delta) == (0, 0):
            raise ValueError("empty component")
        if (self.i == self.j) != (self.delta == 0) or self.i > self.j:
            raise ValueError(f"bad component {self}")

    @property
    def pure_square(self):
        return self.delta == 0

    def monomials(self):
        out = []
        if self.eps:
            out.append((self.i, self.i))
        if self.delta:
            out.append((self.i, self.j))
        return out


@dataclass(frozen=True)
class NormalForm:
    n: int
    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @classmethod
    def from_form(cls, q):
        """Read the components off a form with 0/1 coefficients.

        Raises InvalidInput if q is not a disjoint sum of components.  The
        result need not satisfy C1/C2; see :func:`is_normal`.
        """
        comps, problems = _components_of(q)
        if problems:
            raise InvalidInput("; ".join(v.message for v in problems))
        return cls(q.n, tuple(comps))

    @classmethod
    def parse(cls, text, n=None):
        return cls.from_form(parse_form(text, n))

    def as_form(self):
        c = {}
        for comp in self.components:
            for key in comp.monomials():
                c[key] = 1
        return QuadraticForm._raw(self.n, c)

    def ind(self):
        return {k for c in self.components for k in (c.i, c.j)}

    def pairs(self):
        return [(c.i, c.j) for c in self.components if c.delta]

    def pure_squares(self):
        return [c.i for c in self.components if c.pure_square]

    def filled(self):
        return {c.i for c in self.components if c.eps}

    def __str__(self):
        return str(self.as_form())

    def text(self):
        return str(self.as_form())


class Violation(NamedTuple):
    condition: str
    indices: tuple
    message: str


# ---------------------------------------------------------------------------
# recognising normal forms

def _components_of(q):
    problems = []
    for (i, j), v in q._c.items():
        if v != 1:
            problems.append(Violation("coefficients", (i, j),
                                      f"coefficient of x{i}*x{j} is {format_element(FieldElement(v))}, not 1"))
    squares = {i for (i, j) in q._c if i == j}
    mixed = [(i, j) for (i, j) in q._c if i < j]
    comps = []
    seen = {}
    for i, j in mixed:
        for k in (i, j):
            if k in seen:
                problems.append(Violation("disjoint", (seen[k], (i, j)),
                                          f"x{k} occurs in both {seen[k]} and {(i, j)}"))
            seen[k] = (i, j)
    for i, j in mixed:
        if j in squares:
            problems.append(Violation("disjoint", (j,), f"x{j}^2 sits on the right end of pair ({i}, {j})"))
        comps.append(NormalComponent(i, j, int(i in squares), 1))
    for s in squares:
        if s not in seen:
            comps.append(NormalComponent(s, s, 1, 0))
    comps.sort()
    return comps, problems


def _condition_violations(comps):
    out = []
    for t, c in enumerate(comps):
        if c.pure_square:
            for s in comps[t + 1:]:
                if s.eps:
                    out.append(Violation("C1", (c.i, s.i),
                                         f"x{c.i}^2 is a pure square but x{s.i}^2 follows"))
    for s in comps:
        for t in comps:
            if s.i < t.i < t.j < s.j and s.eps and t.eps:
                out.append(Violation("C2", ((s.i, s.j), (t.i, t.j)),
                                     f"pairs ({t.i}, {t.j}) inside ({s.i}, {s.j}) both carry squares"))
    return out


def is_normal(q):
    """(ok, violations) for a QuadraticForm or NormalForm."""
    if isinstance(q, NormalForm):
        q = q.as_form()
    comps, problems = _components_of(q)
    if problems:
        return False, problems
    v = _condition_violations(comps)
    return not v, v


# ---------------------------------------------------------------------------
# normalization

class _Work:
    """Mutable form plus accumulated witness, for the normalization loop."""

    def __init__(self, q, log):
        self.n = q.n
        self.c = dict(q._c)
        self.w = [[int(a == b) for b in range(q.n)] for a in range(q.n)]
        self.log = log

    def get(self, i, j):
        return self.c.get((i, j) if i <= j else (j, i), 0)

    def partners(self, k, exclude=()):
        """{t: coef(x_k x_t)} for t != k."""
        out = {}
        for (a, b), v in self.c.items():
            if a == b or v == 0:
                continue
            if a == k and b not in exclude:
                out[b] = v
            elif b == k and a not in exclude:
                out[a] = v
        return out

    def substitute(self, images, note):
        """x_t -> sum_j images[t][j] x_j for t in images; identity elsewhere."""
        images = {t: {j: v for j, v in img.items() if v} for t, img in images.items()}
        images = {t: img for t, img in images.items() if img != {t: 1}}
        if not images:
            return
        rows = {t: list(img.items()) for t, img in images.items()}
        out = {}
        for (s, t), c in self.c.items():
            rs = rows.get(s, [(s, 1)])
            if s == t:
                for i, v in rs:
                    out[(i, i)] = out.get((i, i), 0) ^ _mul(c, _mul(v, v))
                continue
            rt = rows.get(t, [(t, 1)])
            for i, a in rs:
                ca = _mul(c, a)
                for j, b in rt:
                    key = (i, j) if i <= j else (j, i)
                    out[key] = out.get(key, 0) ^ _mul(ca, b)
        self.c = {k: v for k, v in out.items() if v}
        # witness W <- W * g
        new = []
        for row in self.w:
            r = list(row)
            for t in images:
                r[t - 1] = 0
            for t, img in images.items():
                f = row[t - 1]
                if f:
                    for j, v in img.items():
                        r[j - 1] ^= _mul(f, v)
            new.append(r)
        self.w = new
        if self.log is not None:
            self.log.append((note, {t: {j: FieldElement(v) for j, v in img.items()} for t, img in images.items()}))


def _peel(work):
    done = set()
    while True:
        live = {k for key in work.c for k in key} - done
        if not live:
            return
        i = min(live)
        others = work.partners(i)
        a = work.get(i, i)
        if not others:
            if a != 1:
                work.substitute({i: {i: _sqrt(_inv(a))}}, f"scale x{i}")
            done.add(i)
            continue
        j = min(others)
        c = others[j]
        cinv = _inv(c)
        u = {t: v for t, v in others.items() if t != j}
        v = work.partners(j, exclude=(i,))
        if a:
            ra = _sqrt(a)
            img_i = {i: _inv(ra)}
            for t, x in v.items():
                img_i[t] = img_i.get(t, 0) ^ _mul(cinv, x)
            img_j = {j: _mul(cinv, ra)}
            for t, x in u.items():
                img_j[t] = img_j.get(t, 0) ^ _mul(cinv, x)
            work.substitute({i: img_i, j: img_j}, f"peel pair ({i}, {j})")
            gamma = work.get(j, j)
            if gamma:
                t = artin_schreier_solve(FieldElement(gamma)).bits
                work.substitute({i: {i: 1, j: t}}, f"clear x{j}^2 (Artin-Schreier)")
        else:
            img_i = {i: 1}
            for t, x in v.items():
                img_i[t] = img_i.get(t, 0) ^ _mul(cinv, x)
            img_j = {j: cinv}
            for t, x in u.items():
                img_j[t] = img_j.get(t, 0) ^ _mul(cinv, x)
            work.substitute({i: img_i, j: img_j}, f"peel pair ({i}, {j})")
            gamma = work.get(j, j)
            if gamma:
                work.substitute({i: {i: 1, j: gamma}}, f"clear x{j}^2")
        done.update((i, j))


def _fix_c1(work):
    comps, _ = _components_of(QuadraticForm._raw(work.n, work.c))
    for t, c in enumerate(comps):
        if c.pure_square:
            later = [s.i for s in comps[t + 1:] if s.eps]
            if later:
                img = {c.i: 1}
                for k in later:
                    img[k] = 1
                work.substitute({c.i: img}, f"clear squares after x{c.i}^2")
            return


def _fix_c2(work):
    while True:
        comps, _ = _components_of(QuadraticForm._raw(work.n, work.c))
        nested = sorted(
            (s.i, t.i, s, t) for s in comps for t in comps
            if s.i < t.i < t.j < s.j and s.eps and t.eps
        )
        if not nested:
            return
        _, _, s, t = nested[0]
        work.substitute({s.i: {s.i: 1, t.i: 1}, t.j: {t.j: 1, s.j: 1}},
                        f"unnest ({t.i}, {t.j}) in ({s.i}, {s.j})")


def normalize(q, log=None):
    """Normal form of q and an upper-triangular witness b with act(b, q) = nf.

    ``log``, if given, is a list that receives (note, substitution) entries
    for every non-trivial step.
    """
    if isinstance(q, NormalForm):
        q = q.as_form()
    work = _Work(q, log)
    _peel(work)
    _fix_c1(work)
    _fix_c2(work)
    nf = NormalForm.from_form(QuadraticForm._raw(work.n, work.c))
    return nf, GroupElement(work.w, "borel", check=False)


def normal_form(q):
    return normalize(q)[0]


# ---------------------------------------------------------------------------
# statistics

def extend(nf):
    """Turn the pure square x_p^2 (if any) into x_p^2 + x_p*x_{n+1}."""
    squares = nf.pure_squares()
    if len(squares) > 1:
        raise InvalidInput("more than one pure square")
    comps = [
        NormalComponent(c.i, nf.n + 1, 1, 1) if c.pure_square else c
        for c in nf.components
    ]
    return NormalForm(nf.n + 1, tuple(comps))


def restrict(nf):
    """Set x_n = 0 (inverse of :func:`extend` on extended forms)."""
    comps = []
    for c in nf.components:
        if c.j == nf.n and c.delta:
            if c.eps:
                comps.append(NormalComponent(c.i, c.i, 1, 0))
        elif c.i != nf.n:
            comps.append(c)
    return NormalForm(nf.n - 1, tuple(comps))


def rank_counts(nf):
    a1 = sum(1 for c in nf.components if not c.eps and c.delta)
    a2 = sum(1 for c in nf.components if c.eps and c.delta)
    a3 = sum(1 for c in nf.components if c.eps and not c.delta)
    return a1, a2, a3


def brank(nf):
    a1, a2, a3 = rank_counts(nf)
    return a1 + 2 * a2 + a3


def is_nondegenerate(nf):
    return nf.ind() == set(range(1, nf.n + 1))


def in_qn(nf):
    """Nondegenerate and of maximal B-rank."""
    return is_nondegenerate(nf) and brank(nf) == nf.n


def _require_qn(nf):
    if not in_qn(nf):
        raise InvalidInput(f"{nf} is not nondegenerate of maximal B-rank")


def split_blocks(pairs, n):
    """Blocks [lo, hi] of 1..n that no arc crosses."""
    reach = [0] * (n + 2)
    for i, j in pairs:
        reach[i] = max(reach[i], j)
    blocks = []
    lo, hi = 1, 0
    for k in range(1, n + 1):
        hi = max(hi, reach[k], k)
        if hi == k:
            blocks.append((lo, k))
            lo = k + 1
    return blocks


def connected_components(nf):
    """Split a nondegenerate normal form at the cuts of its extended diagram.

    On Q_n this is the usual component count; on other nondegenerate forms
    it reads the components off the diagram in the same way.
    """
    if not is_nondegenerate(nf) or not is_normal(nf.as_form())[0]:
        raise InvalidInput(f"{nf} is not a nondegenerate normal form")
    ext = extend(nf) if nf.pure_squares() else nf
    out = []
    for lo, hi in split_blocks(ext.pairs(), ext.n):
        comps = tuple(c for c in nf.components if lo <= c.i <= hi)
        out.append(NormalForm(nf.n, comps))
    return out


def cc(nf):
    return len(connected_components(nf))


@dataclass(frozen=True)
class ArcDiagram:
    n: int
    arcs: frozenset = field(default_factory=frozenset)
    filled: frozenset = field(default_factory=frozenset)


def arc_diagram(nf):
    return ArcDiagram(nf.n, frozenset(nf.pairs()), frozenset(nf.filled()))


@dataclass(frozen=True)
class DyckPath:
    steps: tuple

    def heights(self):
        h, out = 0, [0]
        for s in self.steps:
            h += 1 if s == "U" else -1
            out.append(h)
        return out

    def touches(self):
        """Positions (0..2r) where the path is at ground level."""
        return [k for k, h in enumerate(self.heights()) if h == 0]

    def __str__(self):
        return "".join(self.steps)


def dyck_path(nf):
    """Up-step at every left end, down-step at every right end."""
    _require_qn(nf)
    ext = extend(nf) if nf.n % 2 else nf
    lefts = {i for i, _ in ext.pairs()}
    return DyckPath(tuple("U" if k in lefts else "D" for k in range(1, ext.n + 1)))


# ---------------------------------------------------------------------------
# emitters

def _arc_rows(arcs):
    rows = []
    for a in sorted(arcs, key=lambda p: (p[1] - p[0], p)):
        for row in rows:
            if all(b[1] < a[0] or a[1] < b[0] for b in row):
                row.append(a)
                break
        else:
            rows.append([a])
    return rows


def diagram_ascii(nf):
    """Dots 'o' (hollow) and '*' (filled) with arcs drawn above them."""
    d = arc_diagram(nf) if isinstance(nf, NormalForm) else nf
    step = 3
    wd = step * max(d.n, 1)
    rows = _arc_rows(d.arcs)
    lines = []
    for depth, row in enumerate(reversed(rows)):
        line = [" "] * wd
        for i, j in row:
            a, b = step * (i - 1), step * (j - 1)
            for x in range(a, b + 1):
                line[x] = "-"
            line[a] = line[b] = "+"
        # vertical strokes for arcs drawn on higher lines
        for higher in list(reversed(rows))[:depth]:
            for i, j in higher:
                for x in (step * (i - 1), step * (j - 1)):
                    if line[x] == " ":
                        line[x] = "|"
                    elif line[x] == "-":
                        line[x] = "|"
        lines.append("".join(line).rstrip())
    dots = [" "] * wd
    labels = [" "] * (wd + 3)
    for k in range(1, d.n + 1):
        dots[step * (k - 1)] = "*" if k in d.filled else "o"
        for off, ch in enumerate(str(k)):
            labels[step * (k - 1) + off] = ch
    lines.append("".join(dots).rstrip())
    lines.append("".join(labels).rstrip())
    return "\n".join(lines)


def diagram_dot(nf, name="diagram"):
    d = arc_diagram(nf) if isinstance(nf, NormalForm) else nf
    out = [f"graph {name} {{", "  node [shape=circle, label=\"\", width=0.15];"]
    for k in range(1, d.n + 1):
        style = "filled, fillcolor=black" if k in d.filled else "solid"
        out.append(f"  d{k} [style=\"{style}\", pos=\"{k},0!\", xlabel=\"{k}\"];")
    for i, j in sorted(d.arcs):
        out.append(f"  d{i} -- d{j};")
    out.append("}")
    return "\n".join(out)


def diagram_tikz(nf):
    d = arc_diagram(nf) if isinstance(nf, NormalForm) else nf
    out = ["\\begin{tikzpicture}"]
    for k in range(1, d.n + 1):
        fill = "black" if k in d.filled else "white"
        out.append(f"  \\draw[fill={fill}] ({k},0) circle (2pt) node[below=2pt] {{\\scriptsize {k}}};")
    for i, j in sorted(d.arcs):
        out.append(f"  \\draw ({i},0.07) to[out=90,in=90,looseness=1.2] ({j},0.07);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)
