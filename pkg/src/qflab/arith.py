"""Exact integer and rational primitives.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import os
import random
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

DEFAULT_FACTOR_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class Factorization(NamedTuple):
    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    # gmpy2.mpq and friends expose numerator/denominator
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-8/3"`` or ``"12"``; floats are rejected."""
    s = text.strip()
    num, slash, den = s.partition("/")
    try:
        n = int(num.strip())
        d = int(den.strip()) if slash else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def _nonzero(x: Fraction, what: str = "argument") -> None:
    if x == 0:
        raise ValueError(f"{what} must be nonzero")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _split_large(d, out)
    _split_large(n // d, out)


def factor_limit() -> int:
    raw = os.environ.get("QFLAB_FACTOR_LIMIT")
    if not raw:
        return DEFAULT_FACTOR_LIMIT
    return max(2, int(raw))


@lru_cache(maxsize=4096)
def _factor_abs(n: int, limit: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p * p <= n and p <= limit:
        if n % p == 0:
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
            if n > 1 and is_prime(n):
                break
        elif p == 5 and is_prime(n):
            break
        p += step
        step = 6 - step
    if n > 1:
        _split_large(n, out)
    return tuple(sorted(out.items()))


def factorize(n: int) -> Factorization:
    """Sign and prime factorization of a nonzero integer.

    Trial division runs up to ``QFLAB_FACTOR_LIMIT`` (default 10**6); any
    cofactor left over is split by Pollard rho.

    >>> factorize(-36)
    Factorization(sign=-1, factors=((2, 2), (3, 2)))
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    return Factorization(1 if n > 0 else -1, _factor_abs(abs(n), factor_limit()))


def prime_divisors(x) -> tuple[int, ...]:
    """Primes dividing the numerator or denominator of a nonzero rational."""
    x = as_rational(x)
    _nonzero(x)
    ps = {p for p, _ in factorize(x.numerator).factors}
    ps |= {p for p, _ in factorize(x.denominator).factors}
    return tuple(sorted(ps))


@lru_cache(maxsize=8192)
def _squarefree_int(n: int) -> int:
    fac = factorize(n)
    r = fac.sign
    for p, e in fac.factors:
        if e % 2:
            r *= p
    return r


def squarefree_part(x) -> int:
    """Square-free integer in the square class of ``x`` in Q*/Q*^2."""
    x = as_rational(x)
    _nonzero(x)
    # n/d = n*d / d^2
    return _squarefree_int(x.numerator * x.denominator)


def is_rational_square(x) -> bool:
    x = as_rational(x)
    if x < 0:
        return False
    if x == 0:
        return True
    return math.isqrt(x.numerator) ** 2 == x.numerator and math.isqrt(x.denominator) ** 2 == x.denominator


def rational_sqrt(x) -> Fraction | None:
    x = as_rational(x)
    if not is_rational_square(x):
        return None
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or p < 2 or not is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def padic_valuation(x, p: int) -> int:
    x = as_rational(x)
    _nonzero(x)
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    """``x / p**v_p(x)``."""
    x = as_rational(x)
    return x / Fraction(p) ** padic_valuation(x, p)
