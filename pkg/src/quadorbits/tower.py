"""Binary tower fields F_2 = L_0 < L_1 < L_2 < ...

Level m is the field L_m = F_{2^(2^m)}.  An element of L_m is stored as an
integer whose 2^m bits are its coordinates in a fixed F_2-basis.  The tower is
built by Artin-Schreier steps

    L_{m+1} = L_m[y] / (y^2 + y + c_m),

where c_m is the basis element of L_m of largest index (the product of all
earlier generators y_1...y_m; c_0 = 1).  It is the unique basis element with
absolute trace 1.  An element a0 + a1*y of L_{m+1} with a0, a1 in L_m is
stored as ``a0 | a1 << 2^m``, so the embedding L_m -> L_{m+1} leaves the bits
unchanged.

Because embeddings are trivial on bits, equality and hashing of
:class:`FieldElement` ignore the declared level.
"""

from functools import lru_cache
import random
import re

MAX_LEVEL = 16


class DivisionByZero(ZeroDivisionError):
    pass


class NotInSubfield(ValueError):
    pass


class TowerLevelError(ValueError):
    pass


def width(level):
    return 1 << level


def level_of(bits):
    """Smallest m with bits in L_m."""
    m = 0
    while bits >> (1 << m):
        m += 1
    return m


def _check_level(level):
    if level > MAX_LEVEL:
        raise TowerLevelError(f"tower level {level} exceeds cap {MAX_LEVEL}")


# ---------------------------------------------------------------------------
# integer-level arithmetic

def _top(m):
    """c_m: the basis element of L_m with trace 1."""
    return 1 << ((1 << m) - 1)


@lru_cache(maxsize=1 << 20)
def _mul_at(a, b, m):
    if m == 0:
        return a & b
    h = 1 << (m - 1)
    mask = (1 << h) - 1
    a0, a1 = a & mask, a >> h
    b0, b1 = b & mask, b >> h
    lo = _mul(a0, b0)
    hi = _mul(a1, b1)
    mid = _mul(a0 ^ a1, b0 ^ b1)
    # y^2 = y + c_{m-1}
    low = lo ^ _mul(hi, _top(m - 1))
    high = mid ^ lo
    return low | (high << h)


def _mul(a, b):
    if a < 2 or b < 2:
        return a * b
    return _mul_at(a, b, level_of(a | b))


def _square(a):
    return _mul(a, a)


@lru_cache(maxsize=1 << 16)
def _inv(a):
    if a == 0:
        raise DivisionByZero("inverse of zero")
    if a == 1:
        return 1
    m = level_of(a)
    h = 1 << (m - 1)
    mask = (1 << h) - 1
    a0, a1 = a & mask, a >> h
    # a * conj(a) lies in L_{m-1}; conj(y) = y + 1
    norm = _square(a0) ^ _mul(a0, a1) ^ _mul(_top(m - 1), _square(a1))
    ninv = _inv(norm)
    return _mul(a0 ^ a1, ninv) | (_mul(a1, ninv) << h)


def _pow(a, e):
    result = 1
    while e:
        if e & 1:
            result = _mul(result, a)
        a = _square(a)
        e >>= 1
    return result


@lru_cache(maxsize=1 << 16)
def _sqrt(a):
    # Frobenius has order 2^m on L_m, so its inverse is 2^m - 1 squarings
    m = level_of(a)
    for _ in range((1 << m) - 1):
        a = _square(a)
    return a


def _trace(a, level):
    """Absolute trace of a viewed in L_level: the top coordinate."""
    return (a >> ((1 << level) - 1)) & 1


@lru_cache(maxsize=None)
def _as_solver(m):
    """Row-reduced system for t -> t^2 + t on L_m.

    Returns (pivots, transform): a list of (pivot bit, reduced column, combo)
    usable to back-substitute.
    """
    w = 1 << m
    cols = [(_square(1 << k) ^ (1 << k), 1 << k) for k in range(w)]
    basis = []  # (pivot, value, combo) with unique pivot bits
    for value, combo in cols:
        for pivot, bval, bcombo in basis:
            if value >> pivot & 1:
                value ^= bval
                combo ^= bcombo
        if value:
            pivot = value.bit_length() - 1
            basis = [
                (p, v ^ value, c ^ combo) if v >> pivot & 1 else (p, v, c)
                for p, v, c in basis
            ]
            basis.append((pivot, value, combo))
    return tuple(basis)


def _as_solve_at(g, m):
    """Solve t^2 + t = g inside L_m, or return None."""
    t = 0
    rest = g
    for pivot, value, combo in _as_solver(m):
        if rest >> pivot & 1:
            rest ^= value
            t ^= combo
    if rest:
        return None
    # canonical root: coordinate 0 cleared (roots differ by 1)
    return t & ~1


# ---------------------------------------------------------------------------

class FieldElement:
    """Element of a binary tower field, with a declared level."""

    __slots__ = ("bits", "level")

    def __init__(self, bits, level=None):
        bits = int(bits)
        if bits < 0:
            raise ValueError("negative bit vector")
        low = level_of(bits)
        if level is None:
            level = low
        elif level < low:
            raise NotInSubfield(f"{bits:#x} does not fit in level {level}")
        _check_level(level)
        self.bits = bits
        self.level = level

    @classmethod
    def zero(cls, level=0):
        return cls(0, level)

    @classmethod
    def one(cls, level=0):
        return cls(1, level)

    @classmethod
    def generator(cls, level):
        """The generator y_level adjoined at step level (level >= 1)."""
        if level < 1:
            raise ValueError("L_0 has no generator")
        return cls(1 << (1 << (level - 1)), level)

    @classmethod
    def random(cls, level, rng=random):
        return cls(rng.getrandbits(1 << level), level)

    @classmethod
    def elements(cls, level):
        return [cls(b, level) for b in range(1 << (1 << level))]

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        if other in (0, 1):
            return FieldElement(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.bits ^ other.bits, max(self.level, other.level))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(_mul(self.bits, other.bits), max(self.level, other.level))

    __rmul__ = __mul__

    def inv(self):
        return FieldElement(_inv(self.bits), self.level)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElement(_pow(self.bits, e), self.level)

    def sqrt(self):
        return FieldElement(_sqrt(self.bits), self.level)

    def trace(self):
        """Absolute trace to F_2, computed in the declared level."""
        return _trace(self.bits, self.level)

    def embed(self, target_level):
        if target_level < level_of(self.bits):
            raise NotInSubfield(f"{self} is not in level {target_level}")
        return FieldElement(self.bits, target_level)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other and other in (0, 1)
        return NotImplemented

    def __hash__(self):
        return hash(self.bits)

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"FieldElement({format_element(self)})"

    def __str__(self):
        return format_element(self)


# ---------------------------------------------------------------------------
# functional surface

def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def inv(a):
    return a.inv()


def sqrt(a):
    return a.sqrt()


def embed(a, target_level):
    return a.embed(target_level)


def trace_to_f2(a):
    return a.trace()


def artin_schreier_solve(g):
    """A root t of t^2 + t = g.

    The root lives in level(g) when the trace of g there is 0 and one level up
    otherwise.  Of the two roots t, t + 1 the one with coordinate 0 cleared is
    returned.
    """
    m = g.level
    t = _as_solve_at(g.bits, m)
    if t is not None:
        return FieldElement(t, m)
    _check_level(m + 1)
    # t = a0 + y_{m+1} with a0^2 + a0 = g + c_m
    a0 = _as_solve_at(g.bits ^ _top(m), m)
    return FieldElement(a0 | (1 << (1 << m)), m + 1)


# ---------------------------------------------------------------------------
# text syntax: 0b<coords>@m, little-endian (first digit is coordinate 0)

_ALIASES = {"0": (0, 0), "1": (1, 0), "w": (2, 1)}
ELEMENT_RE = re.compile(r"0b[01]+@\d+|w|[01](?![0-9b])")


def format_element(a):
    for text, (bits, level) in _ALIASES.items():
        if a.bits == bits and a.level == level:
            return text
    digits = "".join(str(a.bits >> k & 1) for k in range(1 << a.level))
    return f"0b{digits}@{a.level}"


def parse_element(text):
    text = text.strip()
    if text in _ALIASES:
        return FieldElement(*_ALIASES[text])
    m = re.fullmatch(r"0b([01]+)@(\d+)", text)
    if not m:
        raise ValueError(f"bad field element syntax: {text!r}")
    digits, level = m.group(1), int(m.group(2))
    _check_level(level)
    if len(digits) != 1 << level:
        raise ValueError(f"level {level} needs {1 << level} digits, got {len(digits)}")
    bits = sum(1 << k for k, d in enumerate(digits) if d == "1")
    return FieldElement(bits, level)


ZERO = FieldElement(0)
ONE = FieldElement(1)
W = FieldElement(2, 1)
