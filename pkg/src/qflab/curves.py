"""Hyperelliptic curves y^2 = f(x) over Q, their function fields and divisors.

A function is written u(x) + v(x)*y with u, v in Q(x). Valuations at a
closed point are read off the norm u^2 - v^2 f: above a ramified or inert
place of Q(x) there is a single point, and above a split place the point
where the numerator vanishes is located by its y-coordinate mod m(x).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.rings import ring

from .arith import as_rational, rational_sqrt
from .forms import DiagonalForm, is_isotropic_global, is_isotropic_quadratic
from .series import Laurent, poly_at, sqrt_one_plus

R, X = ring("x", QQ)
K, XF = field("x", QQ)
_R2, _X2, _T2 = ring("x,T", QQ)
_RT, _T = ring("T", QQ)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _qq(c):
    c = as_rational(c)
    return QQ(c.numerator, c.denominator)


def coeffs(p) -> tuple[Fraction, ...]:
    """Coefficients of a univariate polynomial, constant term first."""
    if not p:
        return ()
    return tuple(_frac(c) for c in reversed(p.to_dense()))


def poly_from(cs) -> object:
    return R.from_dense([_qq(c) for c in reversed(list(cs))]) if cs else R(0)


def _val(p, m) -> int:
    """m-adic valuation of a nonzero polynomial."""
    k = 0
    while True:
        q, r = p.div(m)
        if r:
            return k
        p, k = q, k + 1


def _deg(r) -> int:
    """Degree of a rational function (deg numer - deg denom)."""
    return r.numer.degree() - r.denom.degree()


# -- text ---------------------------------------------------------------------


def poly_text(p) -> str:
    if not p:
        return "0"
    out = []
    for k, c in sorted(((e[0], _frac(c)) for e, c in p.terms()), reverse=True):
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mon = "x" if k == 1 else f"x^{k}"
            body = mon if mag == 1 else f"{mag}*{mon}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def ratfunc_text(r) -> str:
    if r.denom == 1:
        return poly_text(r.numer)
    return f"({poly_text(r.numer)})/({poly_text(r.denom)})"


# -- curves and functions -----------------------------------------------------


class ProjectiveLine:
    """The projective line; its function field is Q(x)."""

    f = None
    genus = 0

    def to_text(self) -> str:
        return "P1"

    __str__ = to_text

    def __eq__(self, other):
        return isinstance(other, ProjectiveLine)

    def __hash__(self):
        return hash("P1")

    def function(self, u, v=0) -> "FunctionElement":
        return FunctionElement(K(u), K(v), None)

    def x(self) -> "FunctionElement":
        return self.function(XF)

    def const(self, c) -> "FunctionElement":
        return self.function(K(_qq(c)))


class HyperellipticCurve:
    """Affine model y^2 = f(x), f square-free of degree >= 3, plus the
    point(s) at infinity."""

    def __init__(self, f):
        f = f if hasattr(f, "ring") and f.ring == R else poly_from(f)
        if f.degree() < 3:
            raise ValueError("need deg f >= 3")
        if f.gcd(f.diff(X)).degree() > 0:
            raise ValueError(f"f = {poly_text(f)} is not square-free")
        self.f = f
        self._fibers: dict = {}

    @property
    def degree(self) -> int:
        return self.f.degree()

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2

    def to_text(self) -> str:
        return "y^2 = " + poly_text(self.f)

    __str__ = to_text

    def __repr__(self):
        return f"HyperellipticCurve({self.to_text()!r})"

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.f == other.f

    def __hash__(self):
        return hash(coeffs(self.f))

    def function(self, u, v=0) -> "FunctionElement":
        return FunctionElement(K(u), K(v), self.f)

    def x(self) -> "FunctionElement":
        return self.function(XF)

    def y(self) -> "FunctionElement":
        return self.function(K(0), K(1))

    def const(self, c) -> "FunctionElement":
        return self.function(K(_qq(c)))


def curve_of(g: "FunctionElement"):
    return ProjectiveLine() if g.f is None else HyperellipticCurve(g.f)


@dataclass(frozen=True, eq=False)
class FunctionElement:
    """u(x) + v(x)*y in Q(C); ``f is None`` means the projective line."""

    u: object
    v: object
    f: object = None

    def __post_init__(self):
        if self.f is None and self.v:
            raise ValueError("y is not defined on the projective line")

    def _coerce(self, other) -> "FunctionElement":
        if isinstance(other, FunctionElement):
            if (self.f is None) != (other.f is None) or (self.f is not None and self.f != other.f):
                raise ValueError("functions live on different curves")
            return other
        return FunctionElement(K(_qq(other)), K(0), self.f)

    def is_zero(self) -> bool:
        return not self.u and not self.v

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((str(self.u), str(self.v)))

    def __add__(self, other):
        o = self._coerce(other)
        return FunctionElement(self.u + o.u, self.v + o.v, self.f)

    __radd__ = __add__

    def __neg__(self):
        return FunctionElement(-self.u, -self.v, self.f)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        f = K(self.f) if self.f is not None else K(0)
        return FunctionElement(self.u * o.u + self.v * o.v * f, self.u * o.v + self.v * o.u, self.f)

    __rmul__ = __mul__

    def conjugate(self) -> "FunctionElement":
        return FunctionElement(self.u, -self.v, self.f)

    def norm(self):
        """u^2 - v^2 f, an element of Q(x)."""
        if self.f is None:
            return self.u
        return self.u**2 - self.v**2 * K(self.f)

    def inverse(self) -> "FunctionElement":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero function has no inverse")
        if self.f is None:
            return FunctionElement(1 / self.u, K(0), None)
        return FunctionElement(self.u / n, -self.v / n, self.f)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self._coerce(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_text(self) -> str:
        if not self.v:
            return ratfunc_text(self.u)
        vt = f"({ratfunc_text(self.v)})*y"
        if not self.u:
            return vt
        return f"{ratfunc_text(self.u)} + {vt}"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FunctionElement({self.to_text()!r})"


def _poly_sqrt(p):
    c, facs = p.factor_list()
    r = rational_sqrt(_frac(c))
    if r is None or any(e % 2 for _, e in facs):
        return None
    out = R(_qq(r))
    for m, e in facs:
        out *= m ** (e // 2)
    return out


def ratfunc_sqrt(r):
    """s in Q(x) with s^2 = r, or None."""
    if not r:
        return K(0)
    a, b = _poly_sqrt(r.numer), _poly_sqrt(r.denom)
    if a is None or b is None:
        return None
    return K(a) / K(b)


def square_class_root(g: "FunctionElement") -> tuple[Fraction, "FunctionElement"] | None:
    """(c, h) with g = c*h^2 and c in Q*, or None.

    Writing h = a + b*y: N(g) = c^2 N(h)^2, and (u + c N(h))/2 = c a^2.
    """
    if g.is_zero():
        return None
    n = ratfunc_sqrt(g.norm())
    if n is None:
        return None
    for sgn in (1, -1):
        s = (g.u + n * sgn) / 2
        if not s:
            continue
        c = _frac(s.numer.LC) / _frac(s.denom.LC)
        a = ratfunc_sqrt(s / K(_qq(c)))
        if a is None:
            continue
        b = g.v / (a * K(_qq(2 * c))) if g.v else K(0)
        h = FunctionElement(a, b, g.f)
        if h * h * c == g:
            return c, h
    return None


# -- closed points -------------------------------------------------------------


@dataclass(frozen=True)
class ClosedPoint:
    """A closed point.

    ``m`` is the monic minimal polynomial of x (constant term first), or
    None at infinity. ``branch`` is one of "ram", "split", "inert" (or
    "line" on P1). For split points ``s`` holds y mod m (or the sign at
    infinity); for inert points it holds f mod m.
    """

    m: tuple[Fraction, ...] | None
    branch: str
    s: tuple[Fraction, ...] | int | None
    degree: int

    @property
    def is_infinite(self) -> bool:
        return self.m is None

    @property
    def x0(self) -> Fraction | None:
        if self.m is not None and len(self.m) == 2:
            return -self.m[0]
        return None

    def sort_key(self):
        if self.m is None:
            return (1, 0, (), self.branch, (-self.s,) if isinstance(self.s, int) else ())
        s = self.s if isinstance(self.s, tuple) else ()
        return (0, len(self.m), self.m, self.branch, s)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        if self.m is None:
            if self.branch == "split":
                return "(inf+)" if self.s == 1 else "(inf-)"
            return "(inf)"
        x0 = self.x0
        if x0 is not None:
            if self.branch == "line":
                return f"({x0})"
            if self.branch == "ram":
                return f"({x0},0)"
            if self.branch == "split":
                return f"({x0},{self.s[0]})"
            return f"({x0},sqrt({self.s[0]}))"
        mt = poly_text(poly_from(self.m))
        if self.branch == "line":
            return f"[{mt}]"
        if self.branch == "ram":
            return f"[{mt}; y=0]"
        if self.branch == "split":
            return f"[{mt}; y={poly_text(poly_from(self.s))}]"
        return f"[{mt}; y^2={poly_text(poly_from(self.s))}]"

    __str__ = label


def _mod_coeffs(p, m) -> tuple[Fraction, ...]:
    r = p % m
    cs = coeffs(r)
    return cs + (Fraction(0),) * (m.degree() - len(cs))


def sqrt_mod(f, m):
    """s with s^2 = f mod m (m monic irreducible), or None.

    K[Y]/(Y^2 - F) is a field exactly when F is not a square in K = Q[x]/m.
    The characteristic polynomial of theta = Y + c*x, taken squarefree,
    factors over Q iff the algebra splits; a factor evaluated at theta is
    then a zero divisor a + b*Y, and F = (a/b)^2.
    """
    F = f % m
    if not F:
        return R(0)
    if m.degree() == 1:
        r = rational_sqrt(_frac(F.coeff(1)) if F else 0)
        return None if r is None else R(_qq(r))
    mm, ff = m.set_ring(_R2), f.set_ring(_R2)
    for c in range(1, 64):
        chi = _RT(mm.resultant((_T2 - c * _X2) ** 2 - ff).as_expr())
        if chi.gcd(chi.diff(_T)).degree() > 0:
            continue
        _, facs = chi.factor_list()
        if len(facs) == 1:
            return None
        phi = facs[0][0]
        a, b = R(0), R(0)
        for coef in phi.to_dense():
            # (a + bY)(c x + Y) + coef
            a, b = (a * c * X + b * F + R(coef)) % m, (a + b * c * X) % m
        inv, _, h = b.gcdex(m)
        return (a * inv * (1 / h.LC)) % m
    raise RuntimeError("no separating element found")  # pragma: no cover


def _fiber(curve: HyperellipticCurve, m):
    key = coeffs(m)
    if key not in curve._fibers:
        if not (curve.f % m):
            curve._fibers[key] = ("ram", None)
        else:
            s = sqrt_mod(curve.f, m)
            curve._fibers[key] = ("inert", None) if s is None else ("split", s)
    return curve._fibers[key]


def _finite_points(curve, m) -> list[ClosedPoint]:
    """Closed points over the place m(x) = 0 of Q(x)."""
    mc, n = coeffs(m), m.degree()
    if curve.f is None:
        return [ClosedPoint(mc, "line", None, n)]
    kind, s = _fiber(curve, m)
    if kind == "ram":
        return [ClosedPoint(mc, "ram", None, n)]
    if kind == "inert":
        return [ClosedPoint(mc, "inert", _mod_coeffs(curve.f, m), 2 * n)]
    return [ClosedPoint(mc, "split", _mod_coeffs(s, m), n), ClosedPoint(mc, "split", _mod_coeffs(-s, m), n)]


def infinite_points(curve) -> list[ClosedPoint]:
    if curve.f is None:
        return [ClosedPoint(None, "line", None, 1)]
    d = curve.f.degree()
    if d % 2:
        return [ClosedPoint(None, "ram", None, 1)]
    if rational_sqrt(_frac(curve.f.LC)) is None:
        return [ClosedPoint(None, "inert", (_frac(curve.f.LC),), 2)]
    return [ClosedPoint(None, "split", 1, 1), ClosedPoint(None, "split", -1, 1)]


def points_over(curve, m) -> list[ClosedPoint]:
    """Closed points above the irreducible polynomial m (None = infinity)."""
    if m is None:
        return infinite_points(curve)
    if not hasattr(m, "ring"):
        m = poly_from(m)
    return _finite_points(curve, m.monic())


def rational_points_over(curve, x0) -> list[ClosedPoint]:
    return [P for P in points_over(curve, X - _qq(x0)) if P.degree == 1]


# -- divisors -----------------------------------------------------------------


class Divisor:
    """Finitely supported formal sum of closed points."""

    def __init__(self, terms=None):
        self._t: dict[ClosedPoint, int] = {}
        for P, n in (terms or {}).items():
            if n:
                self._t[P] = self._t.get(P, 0) + n
        self._t = {P: n for P, n in self._t.items() if n}

    def items(self):
        return sorted(self._t.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[ClosedPoint]:
        return [P for P, _ in self.items()]

    def __getitem__(self, P) -> int:
        return self._t.get(P, 0)

    def __len__(self):
        return len(self._t)

    def degree(self) -> int:
        return sum(P.degree * n for P, n in self._t.items())

    def is_even(self) -> bool:
        return all(n % 2 == 0 for n in self._t.values())

    def __add__(self, other: "Divisor") -> "Divisor":
        t = dict(self._t)
        for P, n in other._t.items():
            t[P] = t.get(P, 0) + n
        return Divisor(t)

    def __neg__(self) -> "Divisor":
        return Divisor({P: -n for P, n in self._t.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor({P: k * n for P, n in self._t.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for P, n in self.items():
            mag = abs(n)
            body = P.label() if mag == 1 else f"{mag}*{P.label()}"
            if not parts:
                parts.append(("-" if n < 0 else "") + body)
            else:
                parts.append(("- " if n < 0 else "+ ") + body)
        return " ".join(parts)

    __repr__ = __str__


def _split_denominators(g: FunctionElement):
    """Polynomials U, V, D with g = (U + V y) / D."""
    D = g.u.denom.lcm(g.v.denom) if g.v else g.u.denom
    U = g.u.numer * D.exquo(g.u.denom) if g.u else R(0)
    V = g.v.numer * D.exquo(g.v.denom) if g.v else R(0)
    return U, V, D


def _pullback(curve, m, e: int, out: dict) -> None:
    pts = _finite_points(curve, m)
    mult = 2 * e if pts[0].branch == "ram" else e
    for P in pts:
        out[P] = out.get(P, 0) + mult


def principal_divisor(curve, g: FunctionElement) -> Divisor:
    if g.is_zero():
        raise ValueError("the zero function has no divisor")
    U, V, D = _split_denominators(g)
    out: dict[ClosedPoint, int] = {}
    for m, e in D.factor_list()[1]:
        _pullback(curve, m.monic(), -e, out)
    if curve.f is None:
        for m, e in U.factor_list()[1]:
            _pullback(curve, m.monic(), e, out)
        out[infinite_points(curve)[0]] = D.degree() - U.degree()
        return Divisor(out)

    f = curve.f
    N = U**2 - V**2 * f
    for m, w in N.factor_list()[1]:
        m = m.monic()
        kind, _ = _fiber(curve, m)
        if kind == "ram":
            P = _finite_points(curve, m)[0]
            out[P] = out.get(P, 0) + w
            continue
        c = min(_val(U, m) if U else w, _val(V, m) if V else w)
        w1 = w - 2 * c
        if c:
            _pullback(curve, m, c, out)
        if w1:
            Um, Vm = U.exquo(m**c), V.exquo(m**c)
            inv, _, h = Vm.gcdex(m)
            s = (-Um * inv * (1 / h.LC)) % m
            P = ClosedPoint(coeffs(m), "split", _mod_coeffs(s, m), m.degree())
            out[P] = out.get(P, 0) + w1

    d = f.degree()
    dD = D.degree()
    vals_u = [] if not U else [U.degree()]
    vals_v = [] if not V else [V.degree()]
    if d % 2:
        P = infinite_points(curve)[0]
        cand = [-2 * k for k in vals_u] + [-2 * k - d for k in vals_v]
        out[P] = min(cand) + 2 * dD
    else:
        pts = infinite_points(curve)
        a = [-k for k in vals_u] + [-k - d // 2 for k in vals_v]
        base = min(a)
        if len(pts) == 1 or len(a) == 1 or a[0] != a[1]:
            for P in pts:
                out[P] = base + dD
        else:
            ell = rational_sqrt(_frac(f.LC))
            lu, lv = _frac(U.LC), _frac(V.LC)
            for P in pts:
                if lu + P.s * ell * lv == 0:
                    other = [Q for Q in pts if Q is not P][0]
                    out[other] = base + dD
                    out[P] = -N.degree() - base + dD
                    break
            else:
                for P in pts:
                    out[P] = base + dD
    return Divisor(out)


# -- local expansions at degree-1 points --------------------------------------


def local_expansion(curve, P: ClosedPoint, prec: int) -> tuple[Laurent, Laurent | None]:
    """(x(t), y(t)) in a uniformizer t at a point of degree 1."""
    if P.degree != 1:
        raise ValueError("local expansions are only available at degree-1 points")
    t = Laurent(1, (Fraction(1),) + (Fraction(0),) * (prec - 1))
    one = Laurent.const(1, prec)
    if curve.f is None:
        if P.m is None:
            return Laurent(-1, one.coeffs), None
        return Laurent.const(P.x0, prec) + t, None
    fc = coeffs(curve.f)
    d = len(fc) - 1
    if P.m is not None:
        x0 = P.x0
        taylor = poly_at(fc, Laurent.const(x0, prec) + t).coeffs  # f(x0 + t)
        if P.branch == "split":
            s0 = P.s[0]
            inner = Laurent(0, tuple(c / (s0 * s0) for c in taylor))
            return Laurent.const(x0, prec) + t, sqrt_one_plus(inner) * s0
        f1 = taylor[1]
        inner = [Fraction(0)] * prec
        inner[0] = Fraction(1)
        for k in range(2, len(taylor)):
            j = 2 * (k - 1)
            if j < prec:
                inner[j] += taylor[k] * f1 ** (k - 2)
        x = Laurent.const(x0, prec) + Laurent(2, (f1,) + (Fraction(0),) * (prec - 1))
        y = sqrt_one_plus(Laurent(0, tuple(inner))).shift(1) * f1
        return x, y
    lc = fc[-1]
    inner = [Fraction(0)] * prec
    if P.branch == "ram":
        for j in range(d + 1):
            if 2 * j < prec:
                inner[2 * j] += fc[d - j] / lc / lc**j
        x = Laurent(-2, (lc,) + (Fraction(0),) * (prec - 1))
        y = sqrt_one_plus(Laurent(0, tuple(inner))).shift(-d) * lc ** ((d + 1) // 2)
        return x, y
    ell = rational_sqrt(lc) * P.s
    for j in range(d + 1):
        if j < prec:
            inner[j] += fc[d - j] / lc
    x = Laurent(-1, one.coeffs)
    y = sqrt_one_plus(Laurent(0, tuple(inner))).shift(-(d // 2)) * ell
    return x, y


def expand_at(curve, g: FunctionElement, P: ClosedPoint, max_prec: int = 1024) -> Laurent:
    """Laurent expansion of g at a degree-1 point, normalized so the first
    coefficient is nonzero."""
    if g.is_zero():
        raise ValueError("zero function")
    U, V, D = _split_denominators(g)
    prec = 16
    while prec <= max_prec:
        x, y = local_expansion(curve, P, prec)
        num = poly_at(coeffs(U), x) if U else None
        if V:
            vy = poly_at(coeffs(V), x) * y
            num = vy if num is None else num + vy
        num = num.normalized()
        den = poly_at(coeffs(D), x).normalized()
        if num.prec and den.prec:
            return (num * den.inverse()).normalized()
        prec *= 2
    raise RuntimeError("precision exhausted")  # pragma: no cover


def valuation_and_residue(curve, g: FunctionElement, P: ClosedPoint) -> tuple[int, Fraction]:
    s = expand_at(curve, g, P)
    return s.val, s.coeffs[0]


# -- fibers and the image of delta --------------------------------------------


def residue_field_disc(P: ClosedPoint) -> Fraction | None:
    """D with k(P) = Q(sqrt D) when [k(P):Q] <= 2 (D = 1 for Q itself)."""
    if P.degree == 1:
        return Fraction(1)
    if P.degree != 2:
        return None
    if P.m is None or len(P.m) == 2:  # inert over a rational place
        return P.s[0]
    c, b, _ = P.m
    return b * b - 4 * c


def fiber_index(q: DiagonalForm, P: ClosedPoint) -> int | None:
    """Index of deg(CH_0(X_P)) in Z for the constant fibration X = Q x C.

    1 when q has a k(P)-point, 2 otherwise; None when undecidable here.
    Residue fields of degree <= 2 are decided by Hasse-Minkowski; isotropy
    over Q carries to every k(P), and anisotropy survives odd-degree
    extensions (Springer).
    """
    if is_isotropic_global(q):
        return 1
    D = residue_field_disc(P)
    if D is not None:
        return 1 if is_isotropic_quadratic(q, D) else 2
    if P.degree % 2:
        return 2
    return None


class DeltaVerdict(str, enum.Enum):
    IN_IMAGE = "InImage"
    NOT_IN_IMAGE = "NotInImage"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def delta_table(q: DiagonalForm, g: FunctionElement, curve) -> list[tuple[ClosedPoint, int, int | None]]:
    return [(P, n, fiber_index(q, P)) for P, n in principal_divisor(curve, g).items()]


def delta_image_test(q: DiagonalForm, g: FunctionElement, curve) -> DeltaVerdict:
    unknown = False
    for _, n, idx in delta_table(q, g, curve):
        if idx is None:
            unknown = unknown or n % 2 == 1
        elif n % idx:
            return DeltaVerdict.NOT_IN_IMAGE
    return DeltaVerdict.UNKNOWN if unknown else DeltaVerdict.IN_IMAGE


@dataclass(frozen=True)
class DnResult:
    answer: str  # "Yes" or "Unknown"
    certificates: tuple[str, ...]


def dn_subgroup_test(q: DiagonalForm, g: FunctionElement, curve) -> DnResult:
    """Certify g in k(C)*_dn(q): at each P, g = unit * element of N_q.

    Certificates: N_q = k(C)* when q is isotropic over Q; otherwise an even
    multiplicity 2e at P gives g = (pi^e)^2 * unit and squares are norms.
    Never answers No.
    """
    if is_isotropic_global(q):
        return DnResult("Yes", ("q isotropic over Q: N_q(k(C)) = k(C)*",))
    div = principal_divisor(curve, g)
    certs = []
    for P, n in div.items():
        if n % 2:
            return DnResult("Unknown", (f"odd multiplicity {n} at {P.label()}: no unit-times-norm certificate",))
        certs.append(f"{P.label()}: g = (pi^{n // 2})^2 * unit")
    if not certs:
        certs.append("g is a unit at every point")
    return DnResult("Yes", tuple(certs))
