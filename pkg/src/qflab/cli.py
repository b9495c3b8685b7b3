"""qflab command line.

    qflab qf invariants 1,-2,3,-6
    qflab qf anisotropic-places 1,-2,3,-6
    qflab pf norm-member "<<1,1>>" 3 --place global
    qflab curve divisor --curve "y^2=-x*(x+2)*(x+3)" --fn x
    qflab hasse prop33 --json

Exit status: 0 determinate answer, 2 Unknown, 1 error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .arith import parse_rational
from .curves import DeltaVerdict, delta_table, delta_image_test, dn_subgroup_test, principal_divisor
from .errors import ParseError
from .exprparse import parse_curve, parse_function
from .forms import (
    anisotropic_places,
    invariants,
    is_isometric,
    is_isotropic,
    parse_form,
    support,
    witt_decompose,
)
from .obstruction import (
    ChowClassCandidate,
    ExternalFact,
    FibrationInstance,
    prop33_report,
    theorem31_pipeline,
)
from .pfister import Answer, norm_member, parse_pfister
from .places import GLOBAL, Place, hilbert_symbol, hilbert_support, parse_place

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _pl(v) -> str:
    if v is GLOBAL:
        return "global"
    return "real" if v.is_real else str(v.p)


def _places(text: str, *forms) -> list:
    if text.strip().lower() == "all":
        return list(support(*forms)) if forms else []
    return [parse_place(text)]


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _bool(b: bool) -> str:
    return "true" if b else "false"


# -- qf -----------------------------------------------------------------------


def cmd_invariants(args) -> int:
    q = parse_form(args.form)
    inv = invariants(q)
    hasse = [_pl(v) for v in sorted(inv.hasse)]
    text = "\n".join([
        f"form {q}",
        f"rank {inv.rank}",
        f"disc {inv.disc}",
        f"signature {inv.signature}",
        "hasse -1 at " + (" ".join(hasse) if hasse else "no place"),
    ])
    _emit(args, text, {"form": q.to_text(), "rank": inv.rank, "disc": inv.disc,
                       "signature": inv.signature, "hasse_minus_one": hasse})
    return EXIT_OK


def cmd_isotropy(args) -> int:
    q = parse_form(args.form)
    places = _places(args.place, q)
    res = [(v, is_isotropic(q, v)) for v in places]
    if len(res) == 1 and args.place.strip().lower() != "all":
        _emit(args, _bool(res[0][1]), {"form": q.to_text(), "place": _pl(res[0][0]), "isotropic": res[0][1]})
    else:
        _emit(args, "\n".join(f"{_pl(v)}: {_bool(b)}" for v, b in res),
              {"form": q.to_text(), "places": [{"place": _pl(v), "isotropic": b} for v, b in res]})
    return EXIT_OK


def cmd_isometric(args) -> int:
    q, r = parse_form(args.form), parse_form(args.other)
    places = _places(args.place, q, r)
    res = [(v, is_isometric(q, r, v)) for v in places]
    if len(res) == 1 and args.place.strip().lower() != "all":
        _emit(args, _bool(res[0][1]), {"forms": [q.to_text(), r.to_text()], "place": _pl(res[0][0]),
                                        "isometric": res[0][1]})
    else:
        _emit(args, "\n".join(f"{_pl(v)}: {_bool(b)}" for v, b in res),
              {"forms": [q.to_text(), r.to_text()], "places": [{"place": _pl(v), "isometric": b} for v, b in res]})
    return EXIT_OK


def cmd_witt(args) -> int:
    q = parse_form(args.form)
    rows = []
    for v in _places(args.place, q):
        w = witt_decompose(q, v)
        rows.append((v, w))
    text = "\n".join(
        (f"{_pl(v)}: " if len(rows) > 1 else "") + f"index {w.witt_index} kernel <{w.anisotropic_kernel.to_text()}>"
        for v, w in rows
    )
    _emit(args, text, {"form": q.to_text(), "places": [
        {"place": _pl(v), "witt_index": w.witt_index, "kernel": w.anisotropic_kernel.to_text()} for v, w in rows
    ]})
    return EXIT_OK


def cmd_hilbert(args) -> int:
    a, b = parse_rational(args.a), parse_rational(args.b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol entries must be nonzero")
    if args.place.strip().lower() == "all":
        places = list(hilbert_support(a, b))
    else:
        v = parse_place(args.place)
        if v is GLOBAL:
            raise ValueError("the Hilbert symbol is local; use --place real, a prime, or all")
        places = [v]
    res = [(v, hilbert_symbol(a, b, v)) for v in places]
    if len(res) == 1 and args.place.strip().lower() != "all":
        _emit(args, str(res[0][1]), {"a": str(a), "b": str(b), "place": _pl(res[0][0]), "symbol": res[0][1]})
    else:
        _emit(args, "\n".join(f"{_pl(v)}: {s}" for v, s in res),
              {"a": str(a), "b": str(b), "places": [{"place": _pl(v), "symbol": s} for v, s in res]})
    return EXIT_OK


def cmd_aniso(args) -> int:
    q = parse_form(args.form)
    pl = anisotropic_places(q)
    _emit(args, " ".join(_pl(v) for v in pl), {"form": q.to_text(), "anisotropic_places": [_pl(v) for v in pl]})
    return EXIT_OK


# -- pf -----------------------------------------------------------------------


def cmd_norm_member(args) -> int:
    text = args.form
    q = parse_pfister(text) if text.lstrip().startswith("<<") else parse_form(text.strip().strip("<>"))
    x = parse_rational(args.x)
    ambient = parse_pfister(args.ambient) if args.ambient else None
    v = parse_place(args.place)
    res = norm_member(q, x, v, ambient)
    payload = {"form": q.to_text(), "x": str(x), "place": _pl(v), "answer": res.answer.value, "reason": res.reason,
               "witness": None if res.witness is None else [str(c) for c in res.witness]}
    text = f"{res.answer.value}\n{res.reason}"
    if res.witness is not None:
        text += "\nwitness (" + ", ".join(str(c) for c in res.witness) + ")"
    _emit(args, text, payload)
    return EXIT_UNKNOWN if res.answer is Answer.UNKNOWN else EXIT_OK


# -- curve --------------------------------------------------------------------


def _curve_and_fn(args):
    C = parse_curve(args.curve)
    g = parse_function(args.fn, C)
    if g.is_zero():
        raise ParseError("the zero function has no divisor", args.fn, 0)
    return C, g


def cmd_divisor(args) -> int:
    C, g = _curve_and_fn(args)
    div = principal_divisor(C, g)
    _emit(args, str(div), {
        "curve": C.to_text(), "function": g.to_text(), "divisor": str(div), "degree": div.degree(),
        "points": [{"point": P.label(), "multiplicity": n, "residue_degree": P.degree} for P, n in div.items()],
    })
    return EXIT_OK


# -- hasse --------------------------------------------------------------------


def cmd_delta(args) -> int:
    q = parse_form(args.form)
    C, g = _curve_and_fn(args)
    verdict = delta_image_test(q, g, C)
    rows = delta_table(q, g, C)
    dn = dn_subgroup_test(q, g, C)
    lines = [verdict.value]
    for P, n, idx in rows:
        lines.append(f"  {P.label()}: multiplicity {n}, fiber index {'Unknown' if idx is None else idx}")
    lines.append(f"dn-subgroup: {dn.answer}")
    _emit(args, "\n".join(lines), {
        "form": q.to_text(), "curve": C.to_text(), "function": g.to_text(), "verdict": verdict.value,
        "points": [{"point": P.label(), "multiplicity": n, "fiber_index": idx} for P, n, idx in rows],
        "dn_subgroup": {"answer": dn.answer, "certificates": list(dn.certificates)},
    })
    return EXIT_UNKNOWN if verdict is DeltaVerdict.UNKNOWN else EXIT_OK


_FACT = re.compile(r"\s*([^=]+?)\s*=\s*(.+)")


def cmd_check(args) -> int:
    q = parse_form(args.form)
    C, g = _curve_and_fn(args)
    inst = FibrationInstance(q, C)
    cand = ChowClassCandidate.of(inst, g)
    if cand.provenance is not DeltaVerdict.IN_IMAGE:
        _emit(args, f"candidate not in the image of delta: {cand.provenance.value}",
              {"candidate": g.to_text(), "delta": cand.provenance.value})
        return EXIT_UNKNOWN if cand.provenance is DeltaVerdict.UNKNOWN else EXIT_OK
    certs: dict = {}
    for spec in args.fact or ():
        m = _FACT.fullmatch(spec)
        if not m:
            raise ParseError("expected PLACE=CITATION", spec, 0)
        v = parse_place(m.group(1))
        if not isinstance(v, Place):
            raise ValueError("external facts attach to a single place")
        certs.setdefault(v, []).append(ExternalFact(m.group(2), f"g not in k_v* N_q(k_v(C)) at {_pl(v)}"))
    rep = theorem31_pipeline(inst, cand, certs, real_sign=args.real_sign)
    _emit(args, rep.to_text(), rep.to_dict())
    return EXIT_OK if rep.determinate else EXIT_UNKNOWN


def cmd_prop33(args) -> int:
    rep = prop33_report()
    _emit(args, rep.to_text(), rep.to_dict())
    return EXIT_OK if rep.determinate else EXIT_UNKNOWN


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qflab", description="Quadratic forms over Q and local-global checks on quadric fibrations.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def verb(sub, name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(_handler=fn)
        return sp

    qf = groups.add_parser("qf", help="diagonal quadratic forms").add_subparsers(dest="verb", required=True)
    verb(qf, "invariants", cmd_invariants, "rank, discriminant, signature, Hasse invariants").add_argument("form")
    sp = verb(qf, "isotropy", cmd_isotropy, "isotropy at a place")
    sp.add_argument("form")
    sp.add_argument("--place", default="global", help="real, a prime, global or all")
    sp = verb(qf, "isometric", cmd_isometric, "isometry at a place")
    sp.add_argument("form")
    sp.add_argument("other")
    sp.add_argument("--place", default="global")
    sp = verb(qf, "witt", cmd_witt, "Witt index and anisotropic kernel")
    sp.add_argument("form")
    sp.add_argument("--place", default="global")
    sp = verb(qf, "hilbert", cmd_hilbert, "Hilbert symbol (a,b)_v")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--place", default="all")
    verb(qf, "anisotropic-places", cmd_aniso, "places where a form of rank >= 3 is anisotropic").add_argument("form")

    pf = groups.add_parser("pf", help="Pfister forms and norm groups").add_subparsers(dest="verb", required=True)
    sp = verb(pf, "norm-member", cmd_norm_member, "is x in N_q?")
    sp.add_argument("form", help="<<a,b,...>> or a diagonal form")
    sp.add_argument("x")
    sp.add_argument("--place", default="global")
    sp.add_argument("--ambient", help="Pfister form q is a neighbor of")

    cv = groups.add_parser("curve", help="hyperelliptic curves").add_subparsers(dest="verb", required=True)
    sp = verb(cv, "divisor", cmd_divisor, "principal divisor of a function")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--fn", required=True)

    hs = groups.add_parser("hasse", help="local-global checks").add_subparsers(dest="verb", required=True)
    for name, fn, help_ in (
        ("delta-image", cmd_delta, "is the class of g in the image of delta?"),
        ("check", cmd_check, "run the injectivity pipeline on an instance"),
    ):
        sp = verb(hs, name, fn, help_)
        sp.add_argument("--form", required=True)
        sp.add_argument("--curve", required=True)
        sp.add_argument("--fn", required=True)
        if name == "check":
            sp.add_argument("--real-sign", type=int, choices=(1, -1))
            sp.add_argument("--fact", action="append", metavar="PLACE=CITATION",
                            help="declare g nontrivial at PLACE on external authority")
    verb(hs, "prop33", cmd_prop33, "the real-place counterexample on y^2 = -x(x+2)(x+3)")
    return p


_NEG = re.compile(r"-\d[\d,/\s+-]*")


def _protect(argv: list[str]) -> list[str]:
    # "-2,3" or "-1/2" as a positional would otherwise look like an option
    return [" " + a if _NEG.fullmatch(a) else a for a in argv]


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_protect(argv))
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_ERROR
    for k, val in vars(args).items():
        if isinstance(val, str):
            setattr(args, k, val.strip())
    try:
        return args._handler(args)
    except ParseError as e:
        print(f"error: {e.annotated()}", file=sys.stderr)
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())
