"""Places of Q, local squares and the Hilbert symbol."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .arith import (
    as_rational,
    is_prime,
    legendre_symbol,
    padic_valuation,
    prime_divisors,
    squarefree_part,
    unit_part,
)


@dataclass(frozen=True, order=True)
class Place:
    """A completion of Q. ``p == 0`` is the real place."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "real" if self.p == 0 else str(self.p)

    def __repr__(self) -> str:
        return "RealPlace" if self.p == 0 else f"FinitePrime({self.p})"


class _Global:
    """Marker for the global field Q itself."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __str__(self):
        return "global"

    __repr__ = __str__

    def __reduce__(self):
        return (_Global, ())


REAL = Place(0)
GLOBAL = _Global()
Field = Union[Place, _Global]


def finite(p: int) -> Place:
    return Place(p)


def parse_place(text: str) -> Place | _Global:
    t = text.strip().lower()
    if t in ("real", "inf", "oo", "infinity", "r"):
        return REAL
    if t in ("global", "q"):
        return GLOBAL
    try:
        p = int(t)
    except ValueError:
        raise ValueError(f"unknown place {text!r}") from None
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return Place(p)


def _is_square_unit_mod(u: int, p: int) -> bool:
    if p == 2:
        return u % 8 == 1
    return legendre_symbol(u, p) == 1


def is_local_square(a, v: Place) -> bool:
    """True iff ``a`` is a square in Q_v."""
    a = as_rational(a)
    if a == 0:
        raise ValueError("zero has no square class")
    if v.is_real:
        return a > 0
    p = v.p
    if padic_valuation(a, p) % 2:
        return False
    u = unit_part(a, p)
    # u = n/d with n, d prime to p; n/d is a square iff n*d is
    w = u.numerator * u.denominator
    return _is_square_unit_mod(w, p)


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol(a, b, v: Place) -> int:
    """Hilbert symbol (a, b)_v in {+1, -1}.

    Closed-form evaluation on square-free representatives; odd p and p = 2
    use the usual valuation/unit-part formulas.
    """
    a, b = as_rational(a), as_rational(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    a, b = squarefree_part(a), squarefree_part(b)
    alpha = 1 if a % p == 0 else 0
    beta = 1 if b % p == 0 else 0
    u = a // p if alpha else a
    w = b // p if beta else b
    if p == 2:
        e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * _eps(p)) % 2 else 1
    if beta:
        s *= legendre_symbol(u, p)
    if alpha:
        s *= legendre_symbol(w, p)
    return s


def support_primes(*values) -> tuple[int, ...]:
    """2 together with every prime dividing a numerator or denominator."""
    ps = {2}
    for x in values:
        ps.update(prime_divisors(x))
    return tuple(sorted(ps))


def relevant_places(*values) -> tuple[Place, ...]:
    return (REAL,) + tuple(Place(p) for p in support_primes(*values))


def hilbert_support(a, b) -> tuple[Place, ...]:
    """Places where (a, b)_v = -1.

    Outside the real place, 2 and the primes dividing a or b the symbol
    is always +1, so scanning those is exact.
    """
    a, b = as_rational(a), as_rational(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    return tuple(v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1)
