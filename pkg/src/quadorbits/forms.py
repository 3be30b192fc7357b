"""Quadratic forms sum c_ij x_i x_j (i <= j) over the binary tower.

Coefficients are kept as raw tower bit-integers (see :mod:`quadorbits.tower`);
the public accessors hand out :class:`FieldElement` values.  Indices are
1-based throughout.

Matrices act by substitution, x_t -> sum_j g[t][j] x_j, which is a right
action: act(g @ h, q) == act(h, act(g, q)).
"""

import re

from .tower import (
    FieldElement, DivisionByZero, ELEMENT_RE, _mul, _inv, format_element,
    level_of, parse_element,
)


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SingularMatrix(ValueError):
    pass


def lex_key(pair):
    """Sort key for monomials: lexicographic on (i, j)."""
    return pair


def precedes(a, b):
    """(k, l) comes strictly before (i, j) in lexicographic order."""
    return a < b


class QuadraticForm:
    __slots__ = ("n", "_c", "_hash")

    def __init__(self, n, coeffs=None):
        self.n = n
        c = {}
        for (i, j), v in (coeffs or {}).items():
            if i > j:
                i, j = j, i
            if not 1 <= i <= j <= n:
                raise IndexError(f"monomial x{i}*x{j} outside 1..{n}")
            bits = v.bits if isinstance(v, FieldElement) else int(v)
            c[(i, j)] = c.get((i, j), 0) ^ bits
        self._c = {k: c[k] for k in sorted(c) if c[k]}
        self._hash = None

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def _raw(cls, n, c):
        q = cls.__new__(cls)
        q.n = n
        q._c = {k: c[k] for k in sorted(c) if c[k]}
        q._hash = None
        return q

    def coef(self, i, j):
        if i > j:
            i, j = j, i
        if not 1 <= i <= j <= self.n:
            raise IndexError(f"({i}, {j}) outside 1..{self.n}")
        return FieldElement(self._c.get((i, j), 0))

    def coef_bits(self, i, j):
        if i > j:
            i, j = j, i
        return self._c.get((i, j), 0)

    @property
    def coeffs(self):
        return {k: FieldElement(v) for k, v in self._c.items()}

    def items(self):
        """(i, j, bits) triples in lexicographic order."""
        return [(i, j, v) for (i, j), v in self._c.items()]

    def ind(self):
        s = set()
        for i, j in self._c:
            s.add(i)
            s.add(j)
        return s

    def level(self):
        return max((level_of(v) for v in self._c.values()), default=0)

    def is_zero(self):
        return not self._c

    def with_n(self, n):
        return QuadraticForm._raw(n, dict(self._c))

    def __add__(self, other):
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) ^ v
        return QuadraticForm._raw(max(self.n, other.n), c)

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._c.items())))
        return self._hash

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"QuadraticForm({self.n}, {format_form(self)!r})"

    def evaluate(self, vec):
        """Value at a vector of tower bit-integers (length n)."""
        total = 0
        for (i, j), v in self._c.items():
            total ^= _mul(v, _mul(vec[i - 1], vec[j - 1]))
        return total


# ---------------------------------------------------------------------------
# text

_TOKEN = re.compile(r"\s*(?:(?P<plus>\+)|(?P<star>\*)|(?P<sq>\^2)|x(?P<var>\d+)|(?P<el>0b[01]+@\d+|w|[01]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             len(text) - len(text[pos:].lstrip()))
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_form(text, n=None):
    """Parse ``x1^2 + w*x1*x2 + ...``.

    A bare variable (degree one) is rejected; the whole text ``0`` gives the
    zero form.  If n is omitted it is the largest index used.
    """
    if text.strip() == "0":
        return QuadraticForm(n or 0)
    toks = _tokens(text)
    k = 0
    terms = []

    def take(kind):
        nonlocal k
        tk = toks[k]
        if tk[0] != kind:
            what = tk[1] or "end of input"
            raise ParseError(f"expected {kind}, found {what!r}", tk[2])
        k += 1
        return tk

    while True:
        coeff = FieldElement(1)
        if toks[k][0] == "el":
            _, el, p = toks[k]
            k += 1
            try:
                coeff = parse_element(el)
            except ValueError as e:
                raise ParseError(str(e), p) from None
            take("star")
        _, a, pa = take("var")
        a = int(a)
        if toks[k][0] == "sq":
            k += 1
            b = a
        elif toks[k][0] == "star":
            k += 1
            _, b, _ = take("var")
            b = int(b)
        else:
            raise ParseError("expected '^2' or '*x<j>' after variable", toks[k][2])
        if a < 1 or b < 1:
            raise ParseError("variable index must be at least 1", pa)
        terms.append((min(a, b), max(a, b), coeff.bits, pa))
        if toks[k][0] == "end":
            break
        take("plus")
    top = max(t[1] for t in terms)
    if n is None:
        n = top
    for i, j, _, p in terms:
        if j > n:
            raise ParseError(f"index {j} outside 1..{n}", p)
    c = {}
    for i, j, v, _ in terms:
        c[(i, j)] = c.get((i, j), 0) ^ v
    return QuadraticForm._raw(n, c)


def format_form(q):
    if not q._c:
        return "0"
    parts = []
    for (i, j), v in q._c.items():
        mono = f"x{i}^2" if i == j else f"x{i}*x{j}"
        parts.append(mono if v == 1 else f"{format_element(FieldElement(v))}*{mono}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# matrices

class GroupElement:
    """Invertible n x n matrix over the tower, rows stored as bit-integers."""

    __slots__ = ("n", "rows", "kind")

    def __init__(self, entries, kind=None, check=True):
        rows = tuple(
            tuple(e.bits if isinstance(e, FieldElement) else int(e) for e in row)
            for row in entries
        )
        self.n = len(rows)
        if any(len(r) != self.n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        if kind is None:
            kind = _detect_kind(rows)
        self.kind = kind
        if check:
            if kind == "borel" and not _is_borel(rows):
                raise ValueError("not invertible upper-triangular")
            if kind == "permutation" and _detect_kind(rows) != "permutation":
                raise ValueError("not a permutation matrix")
            if not _invertible(rows):
                raise SingularMatrix("matrix is singular")

    @classmethod
    def identity(cls, n):
        return cls([[int(a == b) for b in range(n)] for a in range(n)], "permutation", check=False)

    @classmethod
    def from_permutation(cls, w):
        """w[t-1] is the image of t; the matrix sends x_t to x_{w(t)}."""
        n = len(w)
        if sorted(w) != list(range(1, n + 1)):
            raise ValueError(f"{w} is not a permutation of 1..{n}")
        return cls([[int(w[t] == b + 1) for b in range(n)] for t in range(n)], "permutation", check=False)

    @classmethod
    def reflection(cls, n, i):
        w = list(range(1, n + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls.from_permutation(w)

    @classmethod
    def elementary(cls, n, images):
        """Matrix of the substitution {t: {j: bits}} (other variables fixed)."""
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        for t, img in images.items():
            row = [0] * n
            for j, v in img.items():
                row[j - 1] ^= v.bits if isinstance(v, FieldElement) else v
            rows[t - 1] = row
        return cls(rows, check=False)

    def entry(self, i, j):
        return FieldElement(self.rows[i - 1][j - 1])

    def level(self):
        return max((level_of(v) for r in self.rows for v in r), default=0)

    def __matmul__(self, other):
        n = self.n
        if other.n != n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s ^= _mul(a, b)
                row.append(s)
            out.append(row)
        kind = self.kind if self.kind == other.kind else None
        return GroupElement(out, kind, check=False)

    def inverse(self):
        return GroupElement(_inverse(self.rows), self.kind, check=False)

    def is_borel(self):
        return _is_borel(self.rows)

    def is_identity(self):
        return all(v == int(a == b) for a, r in enumerate(self.rows) for b, v in enumerate(r))

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def format(self):
        """Entry grid in tower syntax, one row per line."""
        cells = [[format_element(FieldElement(v)) for v in r] for r in self.rows]
        wd = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(wd) for c in r) for r in cells)

    def __repr__(self):
        return f"GroupElement({self.kind}, {self.format()!r})"


def _detect_kind(rows):
    if all(v in (0, 1) for r in rows for v in r) and all(sum(r) == 1 for r in rows) \
            and all(sum(c) == 1 for c in zip(*rows)):
        return "permutation"
    if _is_borel(rows):
        return "borel"
    return "general"


def _is_borel(rows):
    return all(
        (v == 0) if b < a else (v != 0 if a == b else True)
        for a, r in enumerate(rows) for b, v in enumerate(r)
    )


def _inverse(rows):
    n = len(rows)
    m = [list(r) + [int(a == b) for b in range(n)] for a, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        s = _inv(m[col][col])
        m[col] = [_mul(v, s) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a ^ _mul(f, b) for a, b in zip(m[r], m[col])]
    return [r[n:] for r in m]


def _invertible(rows):
    try:
        _inverse(rows)
    except (SingularMatrix, DivisionByZero):
        return False
    return True


# ---------------------------------------------------------------------------
# action

def act(g, q):
    """Substitute x_t -> sum_j g[t][j] x_j into q."""
    if g.n != q.n:
        raise ValueError(f"matrix is {g.n}x{g.n} but form has n={q.n}")
    sparse = [[(j + 1, v) for j, v in enumerate(r) if v] for r in g.rows]
    out = {}
    for (s, t), c in q._c.items():
        rs = sparse[s - 1]
        if s == t:
            for i, v in rs:
                key = (i, i)
                out[key] = out.get(key, 0) ^ _mul(c, _mul(v, v))
            continue
        rt = sparse[t - 1]
        for i, a in rs:
            ca = _mul(c, a)
            for j, b in rt:
                key = (i, j) if i <= j else (j, i)
                out[key] = out.get(key, 0) ^ _mul(ca, b)
    return QuadraticForm._raw(q.n, out)


def permute(w, q):
    """Relabel variables: x_t -> x_{w(t)}, with w[t-1] = w(t)."""
    if len(w) != q.n:
        raise ValueError("permutation size does not match n")
    out = {}
    for (s, t), c in q._c.items():
        a, b = w[s - 1], w[t - 1]
        out[(min(a, b), max(a, b))] = c
    return QuadraticForm._raw(q.n, out)


def reflect(i, q):
    """Apply the simple reflection s_i = (i i+1)."""
    w = list(range(1, q.n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return permute(w, q)


def parse_matrix(text):
    """Rows separated by ';' or newlines, entries by whitespace or ','."""
    rows = [r for r in re.split(r"[;\n]", text) if r.strip()]
    return GroupElement([[parse_element(e) for e in re.split(r"[\s,]+", r.strip())] for r in rows])


__all__ = [
    "QuadraticForm", "GroupElement", "ParseError", "SingularMatrix", "act",
    "permute", "reflect", "parse_form", "format_form", "parse_matrix",
    "lex_key", "precedes", "ELEMENT_RE",
]
