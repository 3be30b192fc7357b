"""Enumeration of normal forms and the Catalan statistics of Q_n."""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

from .normal import NormalComponent, NormalForm, brank, cc, in_qn, is_nondegenerate

MAX_ENUM_N = 14


def _key(nf):
    return (-brank(nf), nf.text())


def sort_forms(forms):
    """Canonical order: B-rank descending, then text."""
    return sorted(forms, key=_key)


def _scan(n, max_rank):
    """Left-to-right construction of every valid component system.

    Each position is skipped, made a pure square, opens a pair, or closes one
    of the open pairs.  C1 and C2 are enforced as pairs are placed, so every
    leaf is a distinct normal form.
    """
    out = []
    comps = []

    def rec(k, open_pairs, pure_seen):
        if k > n:
            if not open_pairs:
                out.append(NormalForm(n, tuple(comps)))
            return
        remaining = n - k + 1
        if len(open_pairs) > remaining:
            return
        if not max_rank:
            rec(k + 1, open_pairs, pure_seen)
        if not pure_seen and (not max_rank or n % 2):
            comps.append(NormalComponent(k, k, 1, 0))
            rec(k + 1, open_pairs, True)
            comps.pop()
        for eps in ((1,) if max_rank else (0, 1)):
            if eps and pure_seen:
                continue
            rec(k + 1, open_pairs + ((k, eps),), pure_seen)
        for idx, (i, eps) in enumerate(open_pairs):
            # pairs opened before i and still open will enclose (i, k)
            if eps and any(e for _, e in open_pairs[:idx]):
                continue
            if max_rank and idx:
                continue
            comps.append(NormalComponent(i, k, eps, 1))
            rec(k + 1, open_pairs[:idx] + open_pairs[idx + 1:], pure_seen)
            comps.pop()

    rec(1, (), False)
    return sort_forms(out)


def _guard(n):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_ENUM_N:
        raise ValueError(f"n = {n} exceeds the enumeration guard {MAX_ENUM_N}")


def enumerate_normal_forms(n):
    _guard(n)
    return _scan(n, max_rank=False)


def enumerate_qn(n):
    """Nondegenerate normal forms of maximal B-rank.

    Such forms use every index, carry a square on every pair, have no nested
    pairs, and (odd n) end the pair openings before the single pure square.
    """
    _guard(n)
    return _scan(n, max_rank=True)


@dataclass(frozen=True)
class CensusRow:
    nf: NormalForm
    brank: int
    nondegenerate: bool
    cc: Optional[int]

    def as_dict(self):
        return {"form": self.nf.text(), "brank": self.brank,
                "nondegenerate": self.nondegenerate, "cc": self.cc}


def census(n):
    rows = []
    for nf in enumerate_normal_forms(n):
        rows.append(CensusRow(nf, brank(nf), is_nondegenerate(nf), cc(nf) if in_qn(nf) else None))
    return rows


def catalan(m):
    return comb(2 * m, m) // (m + 1) if m >= 0 else 0


def max_rank_count(n):
    return len(enumerate_qn(n))


@lru_cache(maxsize=None)
def catalan_triangle(n, k):
    if n < 0 or k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return catalan_triangle(n - 1, 0)
    if k == n:
        return catalan_triangle(n, n - 1)
    return catalan_triangle(n, k - 1) + catalan_triangle(n - 1, k)


def b_count_direct(n, f):
    return sum(1 for nf in enumerate_qn(n) if cc(nf) == f)


@lru_cache(maxsize=None)
def b_count_recursive(n, f):
    if n % 2:
        return b_count_recursive(n + 1, f)
    r = n // 2
    if f == r and r >= 0:
        return 1
    if f < 1 or f > r:
        return 0
    return sum(catalan(l - 1) * b_count_recursive(n - 2 * l, f - 1) for l in range(1, r - f + 2))


def verify_triangle_identity(n_max):
    """Check C(n,k) = sum_l C(l,l) C(n-l-1,k-l) for 0 <= k < n <= n_max."""
    if n_max > 16:
        raise ValueError("n_max is capped at 16")
    failures = []
    checked = 0
    for n in range(n_max + 1):
        for k in range(n):
            rhs = sum(catalan_triangle(l, l) * catalan_triangle(n - l - 1, k - l) for l in range(k + 1))
            checked += 1
            if rhs != catalan_triangle(n, k):
                failures.append((n, k, catalan_triangle(n, k), rhs))
    return {"checked": checked, "failures": failures, "ok": not failures}


def counts_report(n):
    """Max-rank count against Catalan and b(n, f) three ways."""
    r = (n + 1) // 2
    rows = []
    for f in range(1, r + 1):
        rows.append({
            "f": f,
            "direct": b_count_direct(n, f),
            "recursive": b_count_recursive(n, f),
            "triangle": catalan_triangle(r - 1, r - f),
        })
    mr = max_rank_count(n)
    return {
        "n": n,
        "max_rank": mr,
        "catalan": catalan(r),
        "b": rows,
        "ok": mr == catalan(r) and all(x["direct"] == x["recursive"] == x["triangle"] for x in rows),
    }


def dyck_factor_check(r):
    """Connected forms of Q_{2l} number C_{l-1}, for l <= r."""
    from .normal import dyck_path
    out = {}
    for l in range(1, r + 1):
        conn = [nf for nf in enumerate_qn(2 * l) if cc(nf) == 1]
        paths = {str(dyck_path(nf)) for nf in conn}
        out[l] = (len(conn), len(paths), catalan(l - 1))
    return out


__all__ = [
    "enumerate_normal_forms", "enumerate_qn", "census", "CensusRow", "catalan",
    "max_rank_count", "catalan_triangle", "b_count_direct", "b_count_recursive",
    "verify_triangle_identity", "counts_report", "sort_forms", "dyck_factor_check",
]
