"""Brute-force oracles. None of these use Hilbert symbols or invariants."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np


def _vp(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _squarefree(x) -> int:
    """Integer in the square class of x (clear denominators, strip squares)."""
    x = Fraction(x)
    n = x.numerator * x.denominator
    s = -1 if n < 0 else 1
    n = abs(n)
    out, d = 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
        if n % d == 0:
            out *= d
            n //= d
        d += 1
    return s * out * n


def padic_isotropic(entries, p: int) -> bool:
    """Search for a primitive zero of sum a_i x_i^2 in Z_p.

    Residues are lifted one p-adic digit at a time, only as far as needed to
    pin down Q(x) mod p^j. A unit coordinate x_i with Q(x) = 0 mod
    p^(2 v(2 a_i) + 1) lifts to an exact zero (Hensel).
    """
    a = [_squarefree(c) for c in entries]
    n = len(a)
    va = [_vp(c, p) for c in a]
    e = [_vp(2 * c, p) for c in a]
    K = 2 * max(e) + 1

    def enough(i, r, m, j):
        if m is None:
            return True
        if r == 0:
            return va[i] + 2 * m >= j
        return va[i] + _vp(2 * r, p) + m >= j

    def value(x):
        return sum(c * r * r for c, (r, _) in zip(a, x))

    def dfs(x, j):
        for i, (r, m) in enumerate(x):
            if not enough(i, r, m, j):
                pm = p**m
                return any(dfs(x[:i] + [(r + d * pm, m + 1)] + x[i + 1:], j) for d in range(p))
        if value(x) % p**j:
            return False
        if any(r % p and j >= 2 * e[i] + 1 for i, (r, _) in enumerate(x)):
            return True
        return j < K and dfs(x, j + 1)

    for i0 in range(n):
        for tail in product(range(p), repeat=n - i0 - 1):
            x = [(0, 1)] * i0 + [(1, None)] + [(t, 1) for t in tail]
            if dfs(x, 1):
                return True
    return False


def real_isotropic(entries) -> bool:
    vals = [Fraction(c) for c in entries]
    # a zero on the real unit sphere exists iff both signs occur: check by
    # bisection along the segment between two basis vectors of opposite sign
    for i, j in product(range(len(vals)), repeat=2):
        if vals[i] > 0 > vals[j]:
            lo, hi = 0.0, 1.0  # t e_i + (1-t) e_j changes sign on [0,1]
            f = lambda t: float(vals[i]) * t * t + float(vals[j]) * (1 - t) ** 2
            for _ in range(60):
                mid = (lo + hi) / 2
                if (f(mid) > 0) == (f(hi) > 0):
                    hi = mid
                else:
                    lo = mid
            return abs(f(lo)) < 1e-9
    return False


def hilbert_oracle(a, b, v: int) -> int:
    """(a,b)_v = 1 iff z^2 = a x^2 + b y^2 has a nonzero solution."""
    if v == 0:
        return 1 if real_isotropic([a, b, -1]) else -1
    return 1 if padic_isotropic([a, b, -1], v) else -1


def _values(coeffs, box: int):
    """All values of sum c_i x_i^2 with 0 <= x_i <= box, and whether each
    comes from a nonzero vector."""
    if not coeffs:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=bool)
    sq = np.arange(box + 1, dtype=np.int64) ** 2
    grids = np.meshgrid(*([sq] * len(coeffs)), indexing="ij")
    vals = sum(c * g for c, g in zip(coeffs, grids)).ravel()
    nz = np.ones(vals.shape, dtype=bool)
    nz[0] = False  # the all-zero vector is the first entry
    return vals, nz


def integer_zero(entries, box: int = 50) -> bool:
    """Is there a nonzero integer vector with |x_i| <= box and q(x) = 0?"""
    ents = [Fraction(c) for c in entries]
    den = 1
    for c in ents:
        den = den * c.denominator // np.gcd(den, c.denominator)
    coeffs = [int(c * den) for c in ents]
    h = len(coeffs) // 2
    lv, lnz = _values(coeffs[:h], box)
    rv, rnz = _values(coeffs[h:], box)
    neg_r_all = np.unique(-rv)
    neg_r_nz = np.unique(-rv[rnz])
    if np.intersect1d(np.unique(lv[lnz]), neg_r_all).size:
        return True
    return bool(np.intersect1d(np.unique(lv), neg_r_nz).size)


def quadratic_zero(entries, D: int, r: int = 2):
    """Look for a nonzero zero of q over Q(sqrt D) with coordinates
    a + b sqrt D, |a|, |b| <= r. One-sided: None proves nothing."""
    els = [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]
    sq = {e: (e[0] * e[0] + D * e[1] * e[1], 2 * e[0] * e[1]) for e in els}
    ents = [int(c) for c in entries]
    n = len(ents)

    def val(cs, xs):
        return (sum(c * sq[x][0] for c, x in zip(cs, xs)), sum(c * sq[x][1] for c, x in zip(cs, xs)))

    half = {}
    for xs in product(els, repeat=n - 2):
        if any(x != (0, 0) for x in xs):
            half.setdefault(val(ents[:n - 2], xs), xs)
    zero = ((0, 0),) * (n - 2)
    for ys in product(els, repeat=2):
        s = val(ents[n - 2:], ys)
        t = (-s[0], -s[1])
        if t in half:
            return half[t] + ys
        if t == (0, 0) and any(y != (0, 0) for y in ys):
            return zero + ys
    return None
