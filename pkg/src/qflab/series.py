"""Truncated Laurent series with exact rational coefficients.

Used to expand x and y in a uniformizer at a degree-1 point of a curve, so
that any function can be evaluated there: its leading exponent is the
valuation and its leading coefficient the residue of the unit part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Laurent:
    """t**val * (c0 + c1 t + ... + O(t**len(coeffs)))."""

    val: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def const(cls, c, prec: int) -> "Laurent":
        return cls(0, (Fraction(c),) + (Fraction(0),) * (prec - 1))

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def normalized(self) -> "Laurent":
        i = 0
        while i < len(self.coeffs) and self.coeffs[i] == 0:
            i += 1
        return Laurent(self.val + i, self.coeffs[i:])

    def __add__(self, other: "Laurent") -> "Laurent":
        a, b = (self, other) if self.val <= other.val else (other, self)
        shift = b.val - a.val
        n = min(a.prec, shift + b.prec)
        out = list(a.coeffs[:n]) + [Fraction(0)] * max(0, n - a.prec)
        for i in range(max(0, n - shift)):
            out[shift + i] += b.coeffs[i]
        return Laurent(a.val, tuple(out))

    def __neg__(self) -> "Laurent":
        return Laurent(self.val, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if not isinstance(other, Laurent):
            c = Fraction(other)
            return Laurent(self.val, tuple(c * a for a in self.coeffs))
        x, y = self.normalized(), other.normalized()
        n = min(x.prec, y.prec)
        a, b = x.coeffs, y.coeffs
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n)]
        return Laurent(x.val + y.val, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Laurent":
        s = self.normalized()
        if not s.coeffs or s.coeffs[0] == 0:
            raise ZeroDivisionError("series is zero to working precision")
        a = s.coeffs
        inv = [1 / a[0]]
        for k in range(1, len(a)):
            inv.append(-sum((a[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0)) / a[0])
        return Laurent(-s.val, tuple(inv))

    def shift(self, k: int) -> "Laurent":
        return Laurent(self.val + k, self.coeffs)


def sqrt_one_plus(a: Laurent) -> Laurent:
    """Square root of a power series with constant term 1."""
    if a.val != 0 or a.coeffs[0] != 1:
        raise ValueError("need a power series with constant term 1")
    c = a.coeffs
    s = [Fraction(1)]
    for n in range(1, len(c)):
        acc = c[n] - sum((s[i] * s[n - i] for i in range(1, n)), Fraction(0))
        s.append(acc / 2)
    return Laurent(0, tuple(s))


def poly_at(coeffs_low_to_high, x: Laurent) -> Laurent:
    """Horner evaluation of a polynomial (rational coefficients) at a series."""
    cs = list(coeffs_low_to_high)
    acc = Laurent.const(cs[-1], x.prec)
    for c in reversed(cs[:-1]):
        acc = acc * x + Laurent.const(c, x.prec)
    return acc
