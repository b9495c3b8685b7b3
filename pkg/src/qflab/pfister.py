"""Pfister forms, neighbors, norm groups N_q and quaternion reduced norms."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as cartesian

from .arith import as_rational, is_rational_square, rational_sqrt, squarefree_part
from .errors import ParseError
from .forms import (
    DiagonalForm,
    direct_sum,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    represents,
    scale,
    tensor,
    witt_index,
)
from .places import GLOBAL, REAL, Place, _Global, hilbert_symbol, is_local_square, relevant_places


@dataclass(frozen=True)
class PfisterForm:
    """<<a1,...,an>> = <1,a1> (x) ... (x) <1,an>."""

    slots: tuple[Fraction, ...]

    def __init__(self, slots):
        s = tuple(as_rational(a) for a in slots)
        if not s:
            raise ValueError("a Pfister form needs at least one slot")
        if any(a == 0 for a in s):
            raise ValueError("Pfister slots must be nonzero")
        object.__setattr__(self, "slots", s)

    @property
    def fold(self) -> int:
        return len(self.slots)

    def to_text(self) -> str:
        return "<<" + ",".join(str(a) for a in self.slots) + ">>"

    __str__ = to_text


def parse_pfister(text: str) -> PfisterForm:
    m = re.fullmatch(r"\s*<<(.*)>>\s*", text)
    if not m:
        pos = 0 if "<<" not in text else len(text.rstrip())
        raise ParseError("expected <<a1,a2,...>>", text, pos)
    pos = m.start(1)
    slots = []
    for chunk in m.group(1).split(","):
        try:
            val = Fraction(chunk.replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            raise ParseError("expected a rational slot", text, pos + len(chunk) - len(chunk.lstrip())) from None
        if val == 0:
            raise ParseError("Pfister slots must be nonzero", text, pos)
        slots.append(val)
        pos += len(chunk) + 1
    return PfisterForm(slots)


def expand(p: PfisterForm) -> DiagonalForm:
    q = DiagonalForm([1])
    for a in p.slots:
        q = tensor(DiagonalForm([1, a]), q)
    return q


def is_pfister_neighbor(q: DiagonalForm, p: PfisterForm) -> bool:
    """q is similar to a subform of expand(p) of rank >= 2^(n-1) + 1.

    If q sits inside lam*P then lam*P represents q's first entry a, and since
    D(P) is a group lam*P = a*P. Subform-ness of q in phi is then the
    statement that phi - q has Witt index >= rank(q).
    """
    n = p.fold
    if n > 3:
        raise ValueError("neighbor certification is supported for fold <= 3 only")
    if q.rank > 2**n:
        raise ValueError("a neighbor cannot be larger than its Pfister form")
    if q.rank < 2 ** (n - 1) + 1:
        return False
    phi = scale(q.entries[0], expand(p))
    return witt_index(direct_sum(phi, scale(-1, q)), GLOBAL) >= q.rank


def recognize(q: DiagonalForm) -> PfisterForm | None:
    """Pfister form P with q similar to P or to a neighbor of P, when the
    shape of q makes this decidable here (ranks 2, 3, 4 and 8)."""
    a = q.entries[0]
    rest = [x / a for x in q.entries[1:]]
    if q.rank in (2, 3):
        return PfisterForm(rest[:1] if q.rank == 2 else rest)
    if q.rank == 4:
        if squarefree_part(rest[0] * rest[1] * rest[2]) == 1:
            return PfisterForm(rest[:2])
        return None
    if q.rank == 8:
        qa = scale(1 / a, q)
        for trip in combinations(rest, 3):
            cand = PfisterForm(trip)
            if is_isometric(expand(cand), qa, GLOBAL):
                return cand
    return None


class Answer(str, enum.Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class NormMembershipVerdict:
    answer: Answer
    reason: str
    witness: tuple[Fraction, ...] | None = None


def _field_name(field) -> str:
    return "Q" if isinstance(field, _Global) else ("R" if field.is_real else f"Q_{field.p}")


@lru_cache(maxsize=16)
def _box(dim: int, radius: int) -> tuple[tuple[int, ...], ...]:
    rng = range(-radius, radius + 1)
    return tuple(sorted(cartesian(rng, repeat=dim), key=lambda v: (sum(map(abs, v)), [-c for c in v])))


def value_witness(q: DiagonalForm, x, radius: int = 4, coords: int = 4) -> tuple[Fraction, ...] | None:
    """Rational vector w with q(w) = x, from a bounded integer search over
    the first ``coords`` coordinates (w = integer vector / t)."""
    x = as_rational(x)
    ents = q.entries[:coords]
    for vec in _box(len(ents), radius):
        val = sum(a * c * c for a, c in zip(ents, vec))
        if val == 0:
            continue
        t = rational_sqrt(val / x)
        if t is not None:
            return tuple(Fraction(c) / t for c in vec) + (Fraction(0),) * (q.rank - len(ents))
    return None


def norm_member(
    q, x, field: Place | _Global = GLOBAL, ambient: PfisterForm | None = None, *, witness: bool = True
) -> NormMembershipVerdict:
    """Is x in N_q(F) for F = Q or Q_v?

    q may be a PfisterForm, or a DiagonalForm that is (similar to) a Pfister
    form or a certified neighbor of ``ambient``. Membership is the isotropy
    of P (x) <1,-x>; its hyperbolicity is checked alongside.
    """
    x = as_rational(x)
    if x == 0:
        raise ValueError("N_q lives in F*, x must be nonzero")
    fname = _field_name(field)
    if isinstance(q, PfisterForm):
        pf, form = q, expand(q)
    else:
        form = q
        if is_isotropic(form, field):
            return NormMembershipVerdict(Answer.MEMBER, f"q isotropic over {fname}: N_q = {fname}*")
        if ambient is not None:
            if not is_pfister_neighbor(form, ambient):
                return NormMembershipVerdict(Answer.UNKNOWN, f"q is not a certified neighbor of {ambient}")
            pf = ambient
        else:
            pf = recognize(form)
            if pf is None:
                return NormMembershipVerdict(
                    Answer.UNKNOWN, "q is neither (similar to) a Pfister form nor a certified neighbor"
                )
    P = expand(pf)
    if is_isotropic(P, field):
        return NormMembershipVerdict(Answer.MEMBER, f"{pf} isotropic over {fname}: N_q = {fname}*")
    phi = tensor(P, DiagonalForm([1, -x]))
    iso = is_isotropic(phi, field)
    hyp = is_hyperbolic(phi, field)
    if iso != hyp:  # pragma: no cover - would contradict the Pfister dichotomy
        raise AssertionError(f"{pf} (x) <1,{-x}> isotropic={iso} but hyperbolic={hyp} over {fname}")
    if not iso:
        return NormMembershipVerdict(
            Answer.NON_MEMBER, f"{pf} (x) <1,{-x}> is anisotropic (not hyperbolic) over {fname}"
        )
    w = value_witness(P, x) if witness and isinstance(field, _Global) else None
    return NormMembershipVerdict(Answer.MEMBER, f"{pf} (x) <1,{-x}> is isotropic and hyperbolic over {fname}", w)


def norm_group_closure_check(p: PfisterForm, samples, field: Place | _Global = GLOBAL) -> bool:
    P = expand(p)
    vals = [as_rational(s) for s in samples]
    vals = [s for s in vals if represents(P, s, field)]
    return all(norm_member(p, x * y, field, witness=False).answer is Answer.MEMBER for x in vals for y in vals)


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        a, b = as_rational(a), as_rational(b)
        if a == 0 or b == 0:
            raise ValueError("quaternion symbol entries must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def norm_form(self) -> DiagonalForm:
        return DiagonalForm([1, -self.a, -self.b, self.a * self.b])

    def pfister(self) -> PfisterForm:
        """(a, b) = (-a', -b') has reduced norm form <<a', b'>>."""
        return PfisterForm([-self.a, -self.b])


def ramified_places(D: QuaternionAlgebra) -> tuple[Place, ...]:
    out = tuple(v for v in relevant_places(D.a, D.b) if hilbert_symbol(D.a, D.b, v) == -1)
    if len(out) % 2:  # pragma: no cover - Hilbert reciprocity
        raise AssertionError(f"odd ramification set {out} for {D}")
    return out


def reduced_norm_member(D: QuaternionAlgebra, x) -> bool:
    """x in Nrd(D*): over Q only the ramified real place constrains (x > 0)."""
    x = as_rational(x)
    if x == 0:
        raise ValueError("reduced norms are nonzero")
    if REAL in ramified_places(D):
        return x > 0
    return True


@dataclass(frozen=True)
class Collapse:
    form: DiagonalForm
    degree: int
    note: str


def adjoin_sqrt_collapse(q: DiagonalForm, d, v: Place | _Global = GLOBAL) -> Collapse:
    """Rewrite q over F(sqrt d): entries whose square class contains the
    factor d lose it. If d is already a square in F nothing changes."""
    d = as_rational(d)
    if d == 0:
        raise ValueError("d must be nonzero")
    split = is_rational_square(d) if isinstance(v, _Global) else is_local_square(d, v)
    if split:
        return Collapse(q, 1, f"d = {d} is a square in {_field_name(v)}: L_w = {_field_name(v)}")
    ds = squarefree_part(d)
    out = []
    for a in q.entries:
        s = squarefree_part(a)
        if s % ds == 0 and (ds > 0 or s < 0):
            out.append(a / d)
        else:
            out.append(a)
    return Collapse(DiagonalForm(out), 2, f"d = {d} is not a square in {_field_name(v)}: square class of d collapsed")
