"""Minimal-parabolic orbits P_i q, the class of Phi(P_q), and Brion graphs.

P_i = B u B s_i B, and B s_i B = U_i s_i B where U_i is the root group
x_i -> x_i + t x_{i+1}.  So P_i q is the union of B q (the point at infinity
of P^1 = P_i/B) and the orbits B s_i u_t q for t in the field.  We sample
t in {0, 1, w, theta}: 0 and 1 cover the special points (they always lie in
F_2), w is a spare F_4 point, and theta (a generator of L_2) is generic.
How the special points sit relative to the generic one decides the class:

* one orbit overall                     -> G0 (transitive on P^1)
* three orbits                          -> T0 (two fixed points)
* two orbits, one special point         -> U0
* two orbits, two special points        -> N0 (swapped fixed points)
"""

from dataclasses import dataclass, field
from enum import Enum

from .forms import GroupElement, act, reflect
from .normal import NormalForm, brank, extend, normalize
from .tower import FieldElement

THETA = FieldElement(0b0100, 2)
SAMPLES = {"0": 0, "1": 1, "w": 2, "theta": THETA.bits}


class PhiClass(str, Enum):
    G0 = "G0"
    T0 = "T0"
    N0 = "N0"
    U0 = "U0"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class POrbitDecomposition:
    q: NormalForm
    i: int
    reps: tuple
    top: NormalForm
    computed_phi: PhiClass
    paper_phi: object
    points: dict = field(compare=False, default_factory=dict)

    @property
    def agree(self):
        return self.computed_phi == self.paper_phi


def _nf(x):
    return x if isinstance(x, NormalForm) else normalize(x)[0]


def _sample(q, i, t):
    form = q.as_form()
    if t:
        u = GroupElement.elementary(q.n, {i: {i: 1, i + 1: t}})
        form = act(u, form)
    return normalize(reflect(i, form))[0]


def p_orbit_decompose(q, i):
    q = _nf(q)
    if not 1 <= i < q.n:
        raise ValueError(f"reflection index {i} outside 1..{q.n - 1}")
    points = {"inf": q}
    for name, t in SAMPLES.items():
        points[name] = _sample(q, i, t)
    reps = []
    for v in points.values():
        if v not in reps:
            reps.append(v)
    generic = points["theta"]
    special = [k for k in ("inf", "0", "1") if points[k] != generic]
    if len(reps) == 1:
        phi = PhiClass.G0
    elif len(reps) == 3:
        phi = PhiClass.T0
    else:
        phi = PhiClass.U0 if len(special) == 1 else PhiClass.N0
    reps = tuple(sorted(reps, key=lambda f: (-brank(f), f.text())))
    return POrbitDecomposition(q, i, reps, generic, phi, paper_table(q, i), points)


def paper_table(q, i):
    """The four-row case table, first matching row wins; None if no row fits."""
    q = _nf(q)
    if i not in q.ind() and i + 1 not in q.ind():
        return PhiClass.G0
    if (i, i + 1) in q.pairs():
        return PhiClass.N0
    ext = extend(q) if len(q.pure_squares()) == 1 else q
    comp = {}
    for c in ext.components:
        if c.delta:
            comp[c.i] = comp[c.j] = c
    a, b = comp.get(i), comp.get(i + 1)
    if a is not None and b is not None and a is not b:
        if a.i == i and b.i == i + 1:
            outer = a if a.j > b.j else b
            if outer.eps:
                return PhiClass.T0
        if a.j == i and b.j == i + 1:
            first = a if a.i < b.i else b
            if first.eps:
                return PhiClass.T0
    s = reflect(i, q.as_form())
    if s != q.as_form():
        try:
            ok = normalize(s)[0].as_form() == s
        except ValueError:
            ok = False
        if ok:
            return PhiClass.U0
    return None


def phi_class(q, i):
    d = p_orbit_decompose(q, i)
    return d.computed_phi, d.paper_phi


# ---------------------------------------------------------------------------
# Brion graph

MAX_BRION_N = 8


@dataclass
class BrionGraph:
    n: int
    vertices: list
    edges: list                  # (upper, lower, label, multiplicity)
    level: dict = field(default_factory=dict)

    def edge_set(self):
        return {(frozenset((u.text(), v.text())), lab, mult) for u, v, lab, mult in self.edges}


def _placement(nf, use_oracle):
    if use_oracle and nf.n <= 4:
        from .oracle import orbit_dimension_estimate
        dim = orbit_dimension_estimate(nf.as_form(), brank(nf))
    else:
        dim = 0
    return (brank(nf), dim)


def brion_graph(n, use_oracle=True):
    if n > MAX_BRION_N:
        raise ValueError(f"Brion graph limited to n <= {MAX_BRION_N}")
    from .census import enumerate_normal_forms
    verts = enumerate_normal_forms(n)
    level = {v: _placement(v, use_oracle) for v in verts}
    verts.sort(key=lambda v: (level[v], v.text()), reverse=True)
    seen = set()
    edges = []
    for q in verts:
        for i in range(1, n):
            d = p_orbit_decompose(q, i)
            top = d.top
            for r in d.reps:
                if r == top:
                    continue
                key = (frozenset((top, r)), i)
                if key in seen:
                    continue
                seen.add(key)
                mult = 2 if d.computed_phi == PhiClass.N0 else 1
                edges.append((top, r, i, mult))
    order = {v: k for k, v in enumerate(verts)}
    edges.sort(key=lambda e: (order[e[0]], order[e[1]], e[2]))
    return BrionGraph(n, verts, edges, level)


def emit(graph, fmt="text"):
    verts = graph.vertices
    names = {v: f"v{k}" for k, v in enumerate(verts)}
    if fmt == "dot":
        out = [f"graph brion_{graph.n} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
        for v in verts:
            out.append(f"  {names[v]} [label=\"{v.text()}\"];")
        for u, v, lab, mult in graph.edges:
            for _ in range(mult):
                out.append(f"  {names[v]} -- {names[u]} [label=\"{lab}\"];")
        out.append("}")
        return "\n".join(out) + "\n"
    if fmt == "tikz":
        rows = {}
        for v in verts:
            rows.setdefault(graph.level[v], []).append(v)
        pos = {}
        for y, key in enumerate(sorted(rows)):
            for x, v in enumerate(rows[key]):
                pos[v] = (2.5 * x, 1.2 * y)
        out = ["\\documentclass[tikz]{standalone}", "\\begin{document}",
               "\\begin{tikzpicture}"]
        for v in verts:
            x, y = pos[v]
            label = v.text().replace("*", "")
            out.append(f"  \\node ({names[v]}) at ({x},{y}) {{${label}$}};")
        for u, v, lab, mult in graph.edges:
            if mult == 2:
                out.append(f"  \\draw[double] ({names[v]}) -- node[midway,left] {{\\small {lab}}} ({names[u]});")
            else:
                out.append(f"  \\draw ({names[v]}) -- node[midway,left] {{\\small {lab}}} ({names[u]});")
        out += ["\\end{tikzpicture}", "\\end{document}"]
        return "\n".join(out) + "\n"
    if fmt == "json-lines":
        import json
        lines = []
        for v in verts:
            lines.append(json.dumps({"vertex": v.text(), "level": list(graph.level[v])}))
        for u, v, lab, mult in graph.edges:
            lines.append(json.dumps({"upper": u.text(), "lower": v.text(), "label": lab,
                                     "multiplicity": mult}))
        return "\n".join(lines) + "\n"
    lines = [f"Brion graph n={graph.n}: {len(verts)} vertices, {len(graph.edges)} edges"]
    for v in verts:
        lines.append(f"  [{' '.join(map(str, graph.level[v]))}] {v.text()}")
    for u, v, lab, mult in graph.edges:
        sym = "==" if mult == 2 else "--"
        lines.append(f"  {u.text()} {sym}{lab}{sym} {v.text()}")
    return "\n".join(lines) + "\n"
