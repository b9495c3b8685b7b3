import json
import random
from fractions import Fraction

import pytest

from qflab.curves import (
    DeltaVerdict,
    ProjectiveLine,
    delta_image_test,
    points_over,
    rational_points_over,
    valuation_and_residue,
)
from qflab.exprparse import parse_curve, parse_function
from qflab.forms import DiagonalForm
from qflab.obstruction import (
    ChowClassCandidate,
    ExternalFact,
    FibrationInstance,
    RepresentationWitness,
    ResidueCase,
    ResidueObstruction,
    Verdict,
    build_residue_obstruction,
    find_representation_witness,
    find_witness,
    local_triviality,
    prop33_curve,
    prop33_report,
    second_residue,
    theorem31_pipeline,
    verify_nonmembership_certificate,
)
from qflab.pfister import PfisterForm
from qflab.places import REAL, Place

F = DiagonalForm
BASE = F([1, -2, 3, -6])
L = ProjectiveLine()


@pytest.fixture(scope="module")
def C():
    return prop33_curve()


def _cand(q, curve, text):
    inst = FibrationInstance(q, curve)
    return inst, ChowClassCandidate.of(inst, parse_function(text, curve))


def test_local_triviality_examples(C):
    inst, cand = _cand(BASE, C, "x")
    assert cand.provenance is DeltaVerdict.IN_IMAGE
    assert local_triviality(inst, cand, REAL).verdict is Verdict.TRIVIAL
    assert local_triviality(inst, cand, Place(5)).verdict is Verdict.TRIVIAL
    fact = ExternalFact("PS Prop 6.1", "x not in Q_3* N_q(Q_3(C))")
    lv = local_triviality(inst, cand, Place(3), [fact])
    assert lv.verdict is Verdict.NONTRIVIAL and lv.certificate is fact and not lv.machine_verified
    assert local_triviality(inst, cand, Place(3)).verdict is Verdict.UNKNOWN


def test_local_triviality_rejects_bad_candidates(C):
    inst, cand = _cand(BASE, C, "y")
    assert cand.provenance is DeltaVerdict.NOT_IN_IMAGE
    with pytest.raises(ValueError):
        local_triviality(inst, cand, REAL)
    with pytest.raises(ValueError):
        FibrationInstance(F([1, 1]), C)


def test_second_residue_examples(C):
    (P,) = rational_points_over(C, 0)
    assert second_residue([C.const(1), -C.x()], P).rank == 0
    r = second_residue([C.const(1), -C.y()], P)
    assert r.rank == 1
    val, c = valuation_and_residue(C, C.y(), P)
    assert val == 1 and r.entries == (-c,)
    assert second_residue([C.const(3), C.const(-7)], P).rank == 0
    (Q2,) = points_over(C, [-1, 1])
    with pytest.raises(ValueError):
        second_residue([C.y()], Q2)


def test_certificate_on_the_line():
    t = L.x()
    (P0,) = rational_points_over(L, 0)
    (Pinf,) = points_over(L, None)
    two = F([1, 1])
    cert = ResidueObstruction((ResidueCase(Fraction(1), P0, F([-1, -1])), ResidueCase(Fraction(-1), Pinf, F([1, 1]))))
    assert verify_nonmembership_certificate(two, t, cert)
    # a single parity class is not enough
    half = ResidueObstruction(cert.cases[:1])
    assert not verify_nonmembership_certificate(two, t, half)
    # the claimed residue has to be the real one
    wrong = ResidueObstruction((ResidueCase(Fraction(1), P0, F([1, 1])), cert.cases[1]))
    assert not verify_nonmembership_certificate(two, t, wrong)
    # the bounded search agrees: no witness for t
    assert find_witness(two, t) is None
    assert build_residue_obstruction(two, t, L) is not None


def test_certificate_rejects_isotropic_residue():
    t = L.x()
    (P0,) = rational_points_over(L, 0)
    q = F([1, -1])  # residue <-mu, mu> is isotropic
    cases = tuple(ResidueCase(Fraction(m), P0, F([-m, m])) for m in (1, -1))
    assert not verify_nonmembership_certificate(q, t, ResidueObstruction(cases))


def test_certificate_rejects_squares():
    t = L.x()
    g = (t * t + 1) * (t * t + 1) * 4
    assert build_residue_obstruction(F([1, 1]), g, L) is None
    (P0,) = rational_points_over(L, 0)
    cases = tuple(ResidueCase(Fraction(m), P0, F([-m, -m])) for m in (1, -1))
    assert not verify_nonmembership_certificate(F([1, 1]), g, ResidueObstruction(cases))


def _some_functions(curve, rng, n):
    out = []
    for _ in range(n):
        roots = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        g = curve.const(rng.choice([1, -1, 2, 3, -5]))
        for r in roots:
            g = g * (curve.x() - r)
        out.append(g)
    return out


def test_certificates_never_contradict_witnesses():
    """Soundness: whenever a witness shows mu*g is a value of q, no
    nonmembership certificate is built or accepted."""
    seen_w = seen_c = 0
    for slots in [(1,), (1, 1), (-2, 3), (1, 3), (2, 5)]:
        pf = PfisterForm(slots)
        q = F([1] + list(slots) + ([slots[0] * slots[1]] if len(slots) == 2 else []))
        rng = random.Random(str(slots))
        for g in _some_functions(L, rng, 25) + [L.x() * L.x() + 1, (L.x() * L.x() + 1) * 2]:
            w = find_representation_witness(q, g)
            cert = build_residue_obstruction(pf, g, L)
            if w is not None:
                seen_w += 1
                assert w.verify(q, g)
                assert cert is None
            if cert is not None:
                seen_c += 1
                assert verify_nonmembership_certificate(pf, g, cert)
    assert seen_w and seen_c


def test_witness_examples():
    four = F([1, 1, 1, 1])
    g = L.x() * L.x() + 1
    w = find_witness(four, g)
    assert w is not None and w.verify(four, g)
    assert w.vector[0] == L.x() and w.mu == 1
    bad = RepresentationWitness((L.x(), L.const(0), L.const(0), L.const(0)))
    assert not bad.verify(four, g)
    C = prop33_curve()
    # 3 (x + y)^2 involves y, so only the square-class fallback can find it
    h = (C.x() + C.y()) * (C.x() + C.y()) * 3
    assert find_representation_witness(F([3, 1, 1]), h) is None
    w = find_witness(F([3, 1, 1]), h)
    assert w is not None and w.verify(F([3, 1, 1]), h)


def test_pipeline_isotropic():
    inst, cand = _cand(F([1, -1, 2, 5]), L, "x")
    r = theorem31_pipeline(inst, cand)
    assert r.global_verdict == "Phi injective; class trivial"
    assert all(lv.verdict is Verdict.TRIVIAL for lv in r.places)


def test_pipeline_sum_of_four_squares():
    inst, cand = _cand(F([1, 1, 1, 1]), L, "x^2+1")
    assert cand.provenance is DeltaVerdict.IN_IMAGE
    r = theorem31_pipeline(inst, cand)
    assert r.global_verdict == "Phi injective; class trivial"
    assert [s.label for s in r.steps][-1] == "5c"
    for lv in r.places:
        assert lv.verdict is Verdict.TRIVIAL
    kinds = {lv.certificate.kind for lv in r.places if lv.certificate is not None}
    assert kinds == {"RepresentationWitness"}


def test_pipeline_on_real_counterexample_candidate(C):
    inst, cand = _cand(BASE, C, "x")
    r = theorem31_pipeline(inst, cand)
    assert r.global_verdict.startswith("Phi injective")
    assert any("Arason" in c for c in r.theorem_citations)
    assert any("cap" in c for c in r.theorem_citations)
    fact = ExternalFact("PS Prop 6.1", "x not in Q_3* N_q(Q_3(C))")
    r = theorem31_pipeline(inst, cand, {Place(3): [fact]})
    assert r.global_verdict == "Phi injective; class nontrivial"
    assert r.assumed_facts == ["PS Prop 6.1"]


def test_residue_certificates_outside_delta_image():
    """Inside Im delta every rational point of an anisotropic fiber has even
    multiplicity, so residue certificates (built at rational points) only
    ever apply to candidates outside the image."""
    C = prop33_curve()
    q = F([1, 1, 1, 1])
    for text in ["x", "x+2", "x*(x+3)", "y", "y*(x+2)", "x^2+1"]:
        g = parse_function(text, C)
        cert = build_residue_obstruction(q, g, C)
        if delta_image_test(q, g, C) is DeltaVerdict.IN_IMAGE:
            assert cert is None
    assert build_residue_obstruction(q, C.y(), C) is not None


def test_monotone_certificates(C):
    """Adding certificates can refine Unknown, never flip a verdict."""
    inst, cand = _cand(F([1, 1, 1, 1]), L, "x^2+1")
    base = theorem31_pipeline(inst, cand)
    fact = ExternalFact("made up", "x^2+1 not a norm")
    with pytest.raises(ValueError, match="inconsistent"):
        theorem31_pipeline(inst, cand, {REAL: [fact]})
    assert base.global_verdict == theorem31_pipeline(inst, cand).global_verdict
    inst, cand = _cand(BASE, C, "x")
    before = {lv.place: lv.verdict for lv in theorem31_pipeline(inst, cand).places}
    after = {lv.place: lv.verdict for lv in theorem31_pipeline(inst, cand, {Place(3): [ExternalFact("f", "c")]}).places}
    for v, vd in before.items():
        if vd is not Verdict.UNKNOWN:
            assert after[v] is vd


def test_real_place_report():
    r = prop33_report()
    steps = {s.label: s for s in r.steps}
    assert steps["a"].status == "machine-verified"
    assert steps["c"].status == "machine-verified"
    assert steps["support"].detail.endswith("2 3")
    assert "2*(0,0) - 2*(inf)" in steps["b"].detail
    assert r.global_verdict == "Phi_real not injective"
    assert r.assumed_facts == ["PS Prop 6.1"]
    by = {lv.place: lv for lv in r.places}
    assert by[REAL].verdict is Verdict.TRIVIAL
    assert by[Place(3)].certificate.kind == "ExternalFact"


def test_report_json_shape():
    d = json.loads(prop33_report().to_json())
    assert list(d) == ["instance", "candidate", "places", "global", "assumed_facts", "steps"]
    assert list(d["places"][0]) == ["place", "verdict", "certificate-kind", "machine_verified"]
    assert list(d["global"]) == ["verdict", "theorem_citations"]


def test_reports_deterministic(C):
    assert prop33_report().to_json() == prop33_report().to_json()
    inst, cand = _cand(BASE, C, "x")
    assert theorem31_pipeline(inst, cand).to_json() == theorem31_pipeline(inst, cand).to_json()


def test_pipeline_rejects_outside_image(C):
    inst, cand = _cand(BASE, C, "y")
    with pytest.raises(ValueError):
        theorem31_pipeline(inst, cand)


def test_other_curves_run():
    C = parse_curve("y^2 = x^3 + 1")
    inst, cand = _cand(F([1, 1, 1, 7]), C, "(x+1)^2*3")
    r = theorem31_pipeline(inst, cand)
    assert r.global_verdict.startswith("Phi injective")
    assert r.steps[0].label == "1"
