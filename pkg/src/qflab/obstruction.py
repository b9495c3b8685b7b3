"""Local-global checker for zero-cycles on constant quadric fibrations X = Q x C.

A class of CH_0(X/C) is represented by a function g in the image of delta.
Every verdict carries provenance: machine-verified by exact computation,
cited from the literature, or assumed as an external fact.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from itertools import product as cartesian
from typing import Sequence, Union

from .arith import as_rational, padic_valuation, squarefree_part
from .curves import (
    DeltaVerdict,
    FunctionElement,
    HyperellipticCurve,
    ProjectiveLine,
    K,
    R,
    ClosedPoint,
    coeffs,
    delta_image_test,
    delta_table,
    principal_divisor,
    square_class_root,
    valuation_and_residue,
)
from .forms import (
    DiagonalForm,
    anisotropic_places,
    is_isometric,
    is_isotropic,
    is_isotropic_global,
    scale,
    signature,
    support,
)
from .pfister import PfisterForm, expand, recognize
from .places import GLOBAL, REAL, Place, _Global


class Verdict(str, enum.Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FibrationInstance:
    q: DiagonalForm
    curve: Union[HyperellipticCurve, ProjectiveLine]

    def __post_init__(self):
        if self.q.rank not in (3, 4):
            raise ValueError(f"generic fiber must have rank 3 or 4, got {self.q.rank}")


@dataclass(frozen=True)
class ChowClassCandidate:
    g: FunctionElement
    provenance: DeltaVerdict

    @classmethod
    def of(cls, inst: FibrationInstance, g: FunctionElement) -> "ChowClassCandidate":
        return cls(g, delta_image_test(inst.q, g, inst.curve))


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class RepresentationWitness:
    """q(w) = mu * g, with mu a nonzero constant."""

    vector: tuple[FunctionElement, ...]
    mu: Fraction = Fraction(1)
    kind = "RepresentationWitness"

    def value(self, q: DiagonalForm) -> FunctionElement:
        acc = None
        for a, w in zip(q.entries, self.vector):
            t = w * w * a
            acc = t if acc is None else acc + t
        return acc

    def verify(self, q: DiagonalForm, g: FunctionElement) -> bool:
        if len(self.vector) != q.rank or self.mu == 0:
            return False
        try:
            return self.value(q) == g * self.mu
        except ValueError:
            return False

    def describe(self) -> str:
        vec = ", ".join(w.to_text() for w in self.vector)
        return f"q({vec}) = {self.mu} * g"


@dataclass(frozen=True)
class ResidueCase:
    mu: Fraction
    point: ClosedPoint
    residue: DiagonalForm


@dataclass(frozen=True)
class ResidueObstruction:
    """Second residues of P (x) <1, -mu g> at named points, one case per
    class of mu that has to be excluded."""

    cases: tuple[ResidueCase, ...]
    kind = "ResidueObstruction"

    def describe(self) -> str:
        return "; ".join(f"mu={c.mu} at {c.point.label()}: {c.residue}" for c in self.cases)


@dataclass(frozen=True)
class ExternalFact:
    citation: str
    claim: str
    premises: tuple[str, ...] = ()
    kind = "ExternalFact"

    def describe(self) -> str:
        return f"{self.claim} [{self.citation}]"


Certificate = Union[RepresentationWitness, ResidueObstruction, ExternalFact]


# -- second residues ----------------------------------------------------------


def second_residue(entries: Sequence[FunctionElement], P: ClosedPoint) -> DiagonalForm:
    """Residues of the unit parts of the entries with odd valuation at P."""
    if P.degree != 1:
        raise ValueError("second residues are computed at degree-1 points only")
    out = []
    for e in entries:
        curve = ProjectiveLine() if e.f is None else HyperellipticCurve(e.f)
        val, lead = valuation_and_residue(curve, e, P)
        if val % 2:
            out.append(lead)
    return DiagonalForm(out)


def parity_classes(fld) -> tuple[Fraction, ...]:
    """Representatives of the constant classes mu a certificate must cover."""
    if isinstance(fld, _Global) or fld.is_real:
        return (Fraction(1), Fraction(-1))
    return (Fraction(1), Fraction(fld.p))


def _class_of(mu: Fraction, fld) -> Fraction:
    if isinstance(fld, _Global) or fld.is_real:
        return Fraction(1 if mu > 0 else -1)
    return Fraction(fld.p if padic_valuation(mu, fld.p) % 2 else 1)


def _pfister_of(q) -> DiagonalForm | None:
    if isinstance(q, PfisterForm):
        return expand(q)
    pf = recognize(q)
    return None if pf is None else expand(pf)


def _residue_for(P_form: DiagonalForm, mu: Fraction, g: FunctionElement, pt: ClosedPoint) -> DiagonalForm:
    entries = [g._coerce(a) for a in P_form.entries] + [g * (-mu * a) for a in P_form.entries]
    return second_residue(entries, pt)


def _anisotropic_over(r: DiagonalForm, fld) -> bool:
    if r.rank == 0:
        return False
    if r.rank == 1:
        return True
    return not is_isotropic(r, fld)


def verify_nonmembership_certificate(q, g: FunctionElement, cert: ResidueObstruction, fld=GLOBAL) -> bool:
    """True iff the certificate proves g not in F* N_q(F(C)), F = Q or Q_v.

    A nonempty anisotropic second residue makes P (x) <1,-mu g> non-hyperbolic,
    so mu g is not a value of the Pfister form P (the norm group of q).
    Scaling by mu does not change anisotropy of a residue, but the
    certificate must still name every class of mu explicitly.
    """
    if not isinstance(cert, ResidueObstruction) or not cert.cases:
        return False
    P_form = _pfister_of(q)
    if P_form is None:
        return False
    covered = {_class_of(as_rational(c.mu), fld) for c in cert.cases if c.mu != 0}
    if not set(parity_classes(fld)) <= covered:
        return False
    for c in cert.cases:
        if c.mu == 0 or c.point.degree != 1:
            return False
        try:
            r = _residue_for(P_form, as_rational(c.mu), g, c.point)
        except (ValueError, ZeroDivisionError):
            return False
        if not _anisotropic_over(r, fld):
            return False
        if r.rank != c.residue.rank or not is_isometric(r, c.residue, fld):
            return False
    return True


def build_residue_obstruction(q, g: FunctionElement, curve, fld=GLOBAL) -> ResidueObstruction | None:
    """Look for rational points that certify nonmembership for every class
    of mu; returns a certificate that verify_nonmembership_certificate
    accepts, or None."""
    P_form = _pfister_of(q)
    if P_form is None:
        return None
    pts = [P for P, n in principal_divisor(curve, g).items() if P.degree == 1 and n % 2]
    cases = []
    for mu in parity_classes(fld):
        for pt in pts:
            r = _residue_for(P_form, mu, g, pt)
            if _anisotropic_over(r, fld):
                cases.append(ResidueCase(mu, pt, r))
                break
        else:
            return None
    cert = ResidueObstruction(tuple(cases))
    return cert if verify_nonmembership_certificate(q, g, cert, fld) else None


# -- representation search ----------------------------------------------------


def _int_polys(deg: int, height: int):
    rng = range(-height, height + 1)
    # small first; among equals prefer positive leading coefficients
    return sorted(cartesian(rng, repeat=deg + 1), key=lambda c: (sum(map(abs, c)), [-a for a in reversed(c)]))


def _psquare(c: tuple, n: int) -> tuple:
    out = [0] * n
    for i, a in enumerate(c):
        if a:
            for j, b in enumerate(c):
                out[i + j] += a * b
    return tuple(out)


def _half_sums(ents, sq, n):
    """All sums a_i p_i^2 over the given (integer) entries, keyed by their
    coefficient tuples; the first combination reaching a key wins."""
    table = {(0,) * n: ()}
    for a in ents:
        nxt = {}
        for key, combo in table.items():
            for k, s in enumerate(sq):
                val = tuple(c + a * t for c, t in zip(key, s))
                if val not in nxt:
                    nxt[val] = combo + (k,)
        table = nxt
    return table


def find_representation_witness(
    q: DiagonalForm, g: FunctionElement, *, degree: int | None = None, height: int = 2, mus=(1, -1)
) -> RepresentationWitness | None:
    """Bounded search for q(w) = mu*g with w a vector of polynomials in x
    divided by a common denominator. Only functions of x are searched; the
    default degree is the least one that can reach g."""
    if g.v or g.is_zero():
        return None
    U, D = g.u.numer, g.u.denom
    T = U * D  # q(w/D) = mu U/D  <=>  q(w) = mu U D
    tdeg = T.degree()
    if degree is None:
        degree = max(1, (tdeg + 1) // 2)
    if tdeg > 2 * degree or degree > 2:
        return None
    n = 2 * degree + 1
    # integral data: sum n_i w_i^2 = mu * den * s^2 * T, then w -> w / s
    den = lcm(*(a.denominator for a in q.entries))
    ents = [int(a * den) for a in q.entries]
    tc = list(coeffs(T)) + [Fraction(0)] * (n - tdeg - 1)
    s = lcm(*(c.denominator for c in tc))
    polys = _int_polys(degree, height)
    sq = [_psquare(c, n) for c in polys]
    half = (len(ents) + 1) // 2
    left = _half_sums(ents[:half], sq, n)
    right = _half_sums(ents[half:], sq, n)
    for mu in mus:
        target = [mu * den * s * s * c for c in tc]
        if any(t.denominator != 1 for t in target):
            continue
        target = [int(t) for t in target]
        for key, rc in right.items():
            lc = left.get(tuple(t - k for t, k in zip(target, key)))
            if lc is None:
                continue
            vec = []
            for k in lc + rc:
                p = R.from_dense([int(c) for c in reversed(polys[k])]) if any(polys[k]) else R(0)
                vec.append(FunctionElement(K(p) / K(D * s), K(0), g.f))
            w = RepresentationWitness(tuple(vec), Fraction(mu))
            if w.verify(q, g):
                return w
    return None


def find_witness(q: DiagonalForm, g: FunctionElement) -> RepresentationWitness | None:
    """Polynomial search first; then g = c*h^2, where (h, 0, ..., 0) works
    with mu = a_1 / c."""
    w = find_representation_witness(q, g)
    if w is not None:
        return w
    root = square_class_root(g)
    if root is None:
        return None
    c, h = root
    zero = g._coerce(0)
    w = RepresentationWitness((h,) + (zero,) * (q.rank - 1), q.entries[0] / c)
    return w if w.verify(q, g) else None


# -- local verdicts -----------------------------------------------------------


@dataclass(frozen=True)
class LocalVerdict:
    place: Place
    verdict: Verdict
    certificate: Certificate | None = None
    machine_verified: bool = True
    detail: str = ""


def _place_text(v) -> str:
    return "real" if v.is_real else str(v.p)


def local_triviality(
    inst: FibrationInstance, cand: ChowClassCandidate, v: Place, certificates: Sequence[Certificate] = ()
) -> LocalVerdict:
    if cand.provenance is not DeltaVerdict.IN_IMAGE:
        raise ValueError("only candidates in the image of delta can be analysed")
    q, g = inst.q, cand.g
    fname = "R" if v.is_real else f"Q_{v.p}"
    if is_isotropic(q, v):
        return LocalVerdict(v, Verdict.TRIVIAL, None, True, f"q isotropic over {fname}: N_q = {fname}(C)*")
    trivial = [c for c in certificates if isinstance(c, RepresentationWitness) and c.verify(q, g)]
    residue = [
        c for c in certificates if isinstance(c, ResidueObstruction) and verify_nonmembership_certificate(q, g, c, v)
    ]
    facts = [c for c in certificates if isinstance(c, ExternalFact)]
    if trivial and (residue or facts):
        raise ValueError(f"inconsistent certificates at {fname}: a verified witness contradicts an obstruction")
    if trivial:
        return LocalVerdict(v, Verdict.TRIVIAL, trivial[0], True, trivial[0].describe())
    if residue:
        return LocalVerdict(v, Verdict.NONTRIVIAL, residue[0], True, residue[0].describe())
    if facts:
        return LocalVerdict(v, Verdict.NONTRIVIAL, facts[0], False, facts[0].describe())
    return LocalVerdict(v, Verdict.UNKNOWN, None, False, f"q anisotropic over {fname}; no certificate")


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    label: str
    claim: str
    status: str  # machine-verified | theorem-cited | assumed | derived
    detail: str = ""


@dataclass
class ObstructionReport:
    form: str
    curve: str
    candidate: str
    places: list[LocalVerdict]
    global_verdict: str
    theorem_citations: list[str] = field(default_factory=list)
    assumed_facts: list[str] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)

    @property
    def determinate(self) -> bool:
        return "undetermined" not in self.global_verdict

    def to_dict(self) -> dict:
        return {
            "instance": {"form": self.form, "curve": self.curve},
            "candidate": self.candidate,
            "places": [
                {
                    "place": _place_text(lv.place),
                    "verdict": lv.verdict.value,
                    "certificate-kind": None if lv.certificate is None else lv.certificate.kind,
                    "machine_verified": lv.machine_verified,
                }
                for lv in self.places
            ],
            "global": {"verdict": self.global_verdict, "theorem_citations": list(self.theorem_citations)},
            "assumed_facts": list(self.assumed_facts),
            "steps": [
                {"label": s.label, "claim": s.claim, "status": s.status, "detail": s.detail} for s in self.steps
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"form: <{self.form}>", f"curve: {self.curve}", f"candidate: {self.candidate}", "places:"]
        for lv in self.places:
            kind = "" if lv.certificate is None else f" [{lv.certificate.kind}]"
            mv = "machine-verified" if lv.machine_verified else "not machine-verified"
            lines.append(f"  {_place_text(lv.place)}: {lv.verdict.value}{kind} ({mv}) {lv.detail}".rstrip())
        lines.append("steps:")
        for s in self.steps:
            lines.append(f"  ({s.label}) {s.claim} [{s.status}]" + (f": {s.detail}" if s.detail else ""))
        lines.append(f"global: {self.global_verdict}")
        for c in self.theorem_citations:
            lines.append(f"  cites: {c}")
        for a in self.assumed_facts:
            lines.append(f"  assumes: {a}")
        return "\n".join(lines)


AEJ = "Arason-Elman-Jacob: I^3 L(C) -> prod_w I^3 L_w(C) is injective"
INTERSECTION = "N_q(L(C)) cap k(C)* = N_q(k(C)) for L = k(sqrt d) (norm principle)"
SPRINGER = "Springer: an anisotropic form stays anisotropic over odd-degree extensions"
PFISTER_LEMMA = "x in N_q <=> q (x) <1,-x> hyperbolic, for Pfister q"
PS61 = "PS Prop 6.1"


def _normalize(q: DiagonalForm) -> tuple[DiagonalForm, int]:
    """Scale q to <1,a,b,abd> (or <1,a,b>) and return it with d square-free."""
    nq = scale(1 / q.entries[0], q)
    if q.rank == 3:
        return nq, 1
    _, a, b, c = nq.entries
    return nq, squarefree_part(c / (a * b))


def _places_of(q: DiagonalForm) -> list[Place]:
    return list(support(q))


def theorem31_pipeline(
    inst: FibrationInstance,
    cand: ChowClassCandidate,
    certificates: dict | None = None,
    real_sign: int | None = None,
    search: bool = True,
) -> ObstructionReport:
    """Run the injectivity argument step by step on one instance.

    ``certificates`` maps places to lists of certificates. The deep steps
    (AEJ injectivity and the intersection rule) are cited, never recomputed.
    """
    if cand.provenance is not DeltaVerdict.IN_IMAGE:
        raise ValueError(f"candidate is {cand.provenance.value}, not in the image of delta")
    certificates = certificates or {}
    q, g = inst.q, cand.g
    steps: list[Step] = []
    report = ObstructionReport(q.to_text(), inst.curve.to_text(), g.to_text(), [], "")

    nq, d = _normalize(q)
    steps.append(Step("1", f"normalize q to {nq}", "machine-verified", f"d = {d}"))
    real_emb = d > 0
    lname = "Q" if d == 1 else f"Q(sqrt({d}))"
    steps.append(
        Step("2", f"L = {lname}", "machine-verified", "real embeddings exist" if real_emb else "L is totally imaginary")
    )

    if is_isotropic_global(q):
        for v in _places_of(q):
            report.places.append(LocalVerdict(v, Verdict.TRIVIAL, None, True, "q isotropic over Q"))
        steps.append(Step("3", "q isotropic over Q: N_q(k(C)) = k(C)*, so CH_0(X/C) = 0", "machine-verified"))
        report.global_verdict = "Phi injective; class trivial"
        report.steps = steps
        return report

    if is_isotropic(q, REAL):
        mu, why = 1, "q isotropic over R: any sign works"
    elif real_sign is not None:
        mu, why = (1 if real_sign > 0 else -1), "sign taken from supplied real-place data"
    else:
        mu, why = 1, "no real-place data supplied; mu = +1"
    steps.append(Step("3", f"mu = {mu:+d}", "machine-verified" if is_isotropic(q, REAL) else "assumed", why))

    witness = find_witness(q, g) if search else None
    for v in _places_of(q):
        certs = list(certificates.get(v, ()))
        if witness is not None:
            certs.append(witness)
        report.places.append(local_triviality(inst, cand, v, certs))
    auto = [lv for lv in report.places if lv.verdict is Verdict.TRIVIAL and lv.certificate is None]
    steps.append(
        Step(
            "4",
            "local hypothesis f in k_v* N_q(k_v(C)) at each place",
            "machine-verified",
            f"automatic (q isotropic) at {', '.join(_place_text(lv.place) for lv in auto) or 'none'}; "
            "every prime outside the support is automatic",
        )
    )

    verdicts = [lv.verdict for lv in report.places]
    report.theorem_citations = [AEJ, INTERSECTION]
    if Verdict.NONTRIVIAL in verdicts:
        bad = [lv for lv in report.places if lv.verdict is Verdict.NONTRIVIAL]
        report.global_verdict = "Phi injective; class nontrivial"
        for lv in bad:
            if isinstance(lv.certificate, ExternalFact):
                report.assumed_facts.append(lv.certificate.citation)
        steps.append(
            Step(
                "5",
                "class is nonzero: a local image is nonzero",
                "machine-verified" if all(lv.machine_verified for lv in bad) else "assumed",
                "; ".join(f"{_place_text(lv.place)}: {lv.detail}" for lv in bad),
            )
        )
    elif Verdict.UNKNOWN in verdicts:
        report.global_verdict = "Phi injective; class undetermined"
        und = ", ".join(_place_text(lv.place) for lv in report.places if lv.verdict is Verdict.UNKNOWN)
        steps.append(Step("5", "local hypotheses not all established", "derived", f"Unknown at {und}"))
    else:
        report.global_verdict = "Phi injective; class trivial"
        steps.append(
            Step("5a", "q (x) <1,-mu f> hyperbolic over L_w(C) for all w => hyperbolic over L(C)", "theorem-cited", AEJ)
        )
        steps.append(Step("5b", "mu f in N_q(L(C)) cap k(C)* = N_q(k(C))", "theorem-cited", INTERSECTION))
        if witness is not None:
            steps.append(Step("5c", "membership confirmed by explicit witness", "machine-verified", witness.describe()))
    report.steps = steps
    return report


PROP33_FORM = DiagonalForm([1, -2, 3, -6])


def prop33_curve() -> HyperellipticCurve:
    x = R.gens[0]
    return HyperellipticCurve(-x * (x + 2) * (x + 3))


def prop33_report() -> ObstructionReport:
    """The real place alone does not detect CH_0(X/C) for q = <1,-2,3,-6> on
    y^2 = -x(x+2)(x+3); the class of x is the witness."""
    q = PROP33_FORM
    C = prop33_curve()
    g = C.x()
    inst = FibrationInstance(q, C)
    steps: list[Step] = []

    real_iso = is_isotropic(q, REAL)
    steps.append(
        Step("a", "q isotropic over R, so CH_0(X_R/C_R) = 0", "machine-verified" if real_iso else "failed",
             f"signature {signature(q)}")
    )
    table = delta_table(q, g, C)
    div = principal_divisor(C, g)
    delta = delta_image_test(q, g, C)
    idx = ", ".join(f"{P.label()}: {i}" for P, _, i in table)
    steps.append(
        Step("b", "div_C(x) even, fiber indices 2, so x in Im delta",
             "machine-verified" if div.is_even() and delta is DeltaVerdict.IN_IMAGE else "failed",
             f"div = {div}; indices {idx}; delta: {delta.value}")
    )
    iso3 = is_isometric(q, DiagonalForm([1, 1, 3, 3]), Place(3))
    steps.append(Step("c", "q isometric to <1,1,3,3> over Q_3", "machine-verified" if iso3 else "failed"))
    fact = ExternalFact(
        PS61,
        "x not in Q_3* N_q(Q_3(C))",
        (
            "q anisotropic over Q_3 (machine-verified)" if not is_isotropic(q, Place(3)) else "q isotropic over Q_3 (!)",
            "div_C(x) even: residues at rational points vanish (machine-verified)",
        ),
    )
    steps.append(Step("d", fact.claim, "assumed", f"{fact.citation}; premises: " + "; ".join(fact.premises)))

    cand = ChowClassCandidate(g, delta)
    places = [local_triviality(inst, cand, v, [fact] if v == Place(3) else []) for v in support(q)]
    aniso = anisotropic_places(q)
    steps.append(
        Step("support", "local summands can be nonzero only at 2 and 3", "machine-verified",
             "anisotropic places: " + " ".join(_place_text(v) for v in aniso))
    )
    ok = real_iso and iso3 and delta is DeltaVerdict.IN_IMAGE and div.is_even()
    steps.append(
        Step("conclusion", "CH_0(X/C) != 0 while CH_0(X_R/C_R) = 0, so Phi_real is not injective",
             "derived" if ok else "failed", "from (a)-(d)")
    )
    return ObstructionReport(
        q.to_text(), C.to_text(), g.to_text(), places,
        "Phi_real not injective" if ok else "Phi_real undetermined",
        theorem_citations=[SPRINGER, PFISTER_LEMMA],
        assumed_facts=[PS61],
        steps=steps,
    )
