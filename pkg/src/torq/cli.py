"""``torq``: command-line access to fans, triangles and quotient presentations.

Exit codes: 0 success, 1 unreadable or malformed input, 2 semantic failure
(invalid data or an unmet precondition).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import documents as docs
from .coordring import (MonomialIdeal, irrelevant_generators, irrelevant_membership,
                        saturated_covering, section_monoid)
from .divisor import ClassGroup, WeilDivisor, is_cartier, is_qcartier
from .errors import TorqError, TriangleError
from .fan import new_fan_map
from .fixtures import corpus
from .presentation import (QuotientPresentation, WeightGroup, ample_triangle, build_presentation,
                           canonical_triangle, check_presentation, classify, cox_triangle,
                           kajiwara_triangle, pushforward, random_triangle, strict_transform)
from .render import render_svg
from .sheafcalc import sections_basis, vanishing_crosscheck, vanishing_test


def _text_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _text(report: dict) -> str:
    return "".join(f"{k.replace('_', ' ')}: {_text_value(v)}\n" for k, v in report.items())


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _report(args, report: dict):
    _emit(args, docs.dumps(report) if args.format == "json" else _text(report))


def _base(path: str) -> Path:
    return Path(path).resolve().parent


def _fan(path: str):
    _, doc = docs.load(path, ("fan",))
    return docs.fan_from_json(doc)


def _presentation(path: str) -> QuotientPresentation:
    kind, doc = docs.load(path, ("triangle", "presentation"))
    tri = doc if kind == "triangle" else doc["triangle"]
    return build_presentation(docs.triangle_from_json(tri, _base(path)))


# --- commands ------------------------------------------------------------------

def _validate_presentation(doc: dict, base: Path) -> dict:
    source = docs.fan_from_json(doc["source"])
    target = docs.fan_from_json(doc["target"])
    fm = new_fan_map(docs.matrix_from_json(doc["Q"]), source, target)
    report = check_presentation(fm)
    qp = build_presentation(docs.triangle_from_json(doc["triangle"], base))
    rebuilt = docs.presentation_to_json(qp)
    matches = all(rebuilt[k] == doc[k] for k in ("source", "target", "Q", "ray_bijection"))
    out = {"kind": "presentation", **report.conditions(), "matches_triangle": matches}
    out["valid"] = report.verdict and matches
    return out


def cmd_validate(args) -> int:
    kind, doc = docs.load(args.path)
    base = _base(args.path)
    try:
        if kind == "fan":
            F = docs.fan_from_json(doc)
            report = {"kind": kind, "valid": True, "rays": len(F.rays), "cones": len(F),
                      "complete": F.is_complete()}
        elif kind == "divisor":
            D = docs.divisor_from_json(doc, base=base)
            report = {"kind": kind, "valid": True, "cartier": is_cartier(D) is not None,
                      "qcartier": is_qcartier(D) is not None,
                      "class": list(ClassGroup(D.fan).class_of(D))}
        elif kind == "triangle":
            T = docs.triangle_from_json(doc, base)
            report = {"kind": kind, "valid": True, "Mhat_rank": T.Mhat_rank}
        elif kind == "presentation":
            report = _validate_presentation(doc, base)
        else:
            report = {"kind": kind, "valid": True,
                      "generators": len(docs.ideal_from_json(doc))}
    except TriangleError as exc:
        report = {"kind": kind, "valid": False, "axiom": exc.axiom, "error": str(exc)}
    except TorqError as exc:
        report = {"kind": kind, "valid": False, "error": str(exc)}
    _report(args, report)
    return 0 if report["valid"] else 2


def cmd_build(args) -> int:
    _, doc = docs.load(args.triangle, ("triangle",))
    qp = build_presentation(docs.triangle_from_json(doc, _base(args.triangle)))
    _emit(args, docs.dumps(docs.presentation_to_json(qp)))
    return 0


def _builder(fn: Callable) -> Callable:
    def run(args) -> int:
        T = fn(_fan(args.fan))
        _emit(args, docs.dumps(docs.triangle_to_json(T)))
        return 0
    return run


def cmd_ample(args) -> int:
    F = _fan(args.fan)
    _, doc = docs.load(args.divisor, ("divisor",))
    D = docs.divisor_from_json(doc, F, _base(args.divisor))
    _emit(args, docs.dumps(docs.triangle_to_json(ample_triangle(F, D))))
    return 0


def cmd_classify(args) -> int:
    qp = _presentation(args.presentation)
    c = classify(qp.triangle)
    W = WeightGroup(qp.triangle)
    report = {
        "good": c.good,
        "geometric": c.geometric,
        "principal": c.principal,
        "W": str(W.presentation),
        "Cl": str(W.class_group.presentation),
        "snake_map": [list(v) for v in W.snake_images()],
    }
    _report(args, report)
    return 0


def cmd_sections(args) -> int:
    F = _fan(args.fan)
    _, doc = docs.load(args.divisor, ("divisor",))
    D = docs.divisor_from_json(doc, F, _base(args.divisor))
    S = sections_basis(F, D)
    _report(args, {"divisor": list(D.coeffs), "count": len(S),
                   "monomials": [list(m) for m in S.basis]})
    return 0


def cmd_irrelevant(args) -> int:
    R = section_monoid(_presentation(args.presentation))
    _report(args, {
        "generators": [list(g) for g in irrelevant_generators(R)],
        "saturated_covering": [list(g) for g in saturated_covering(R)],
        "affine": irrelevant_membership(R, (0,) * R.rank),
    })
    return 0


def cmd_vanishing(args) -> int:
    R = section_monoid(_presentation(args.presentation))
    _, doc = docs.load(args.ideal, ("ideal",))
    I = MonomialIdeal(R, tuple(docs.ideal_from_json(doc)))
    zero = vanishing_test(R, I)
    cc = vanishing_crosscheck(R, I, args.bound, args.power)
    _report(args, {
        "zero_sheaf": zero,
        "crosscheck_agrees": cc.agrees,
        "charts": [{"cone": list(c.cone), "saturated": list(c.saturated), "checked": c.checked,
                    "killed": c.killed, "max_power": c.max_power} for c in cc.charts],
    })
    return 0


def cmd_render(args) -> int:
    svg = render_svg(_fan(args.fan))
    if args.out and not args.output:
        args.output = args.out
    _emit(args, svg)
    return 0


def cmd_selftest(args) -> int:
    seed = int(os.environ.get("TORQ_SEED", "0"))
    rng = random.Random(seed)
    rows = []
    for name, F in corpus().items():
        ok = 0
        for _ in range(args.count):
            qp = build_presentation(random_triangle(F, rng))
            good = check_presentation(qp.fan_map).verdict
            for _ in range(args.divisors):
                D = WeilDivisor(F, [rng.randint(-5, 5) for _ in F.rays])
                good = good and pushforward(qp, strict_transform(qp, D)) == D
            ok += good
        rows.append({"fan": name, "triangles": args.count, "passed": ok})
    passed = all(r["passed"] == r["triangles"] for r in rows)
    _report(args, {"seed": seed, "passed": passed, "results": rows})
    return 0 if passed else 2


# --- entry point -------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text",
                        help="report format (documents are always JSON)")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="torq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, *positional):
        sp = sub.add_parser(name, parents=[common], help=help)
        for a in positional:
            sp.add_argument(a)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "validate a document of any kind", "path")
    add("build", cmd_build, "build the quotient presentation of a triangle", "triangle")
    add("cox", _builder(cox_triangle), "Cox triangle of a fan", "fan")
    add("canonical", _builder(canonical_triangle), "canonical triangle of a fan", "fan")
    add("kajiwara", _builder(kajiwara_triangle), "Cartier-divisor triangle of a fan", "fan")
    add("ample", cmd_ample, "triangle of an ample divisor", "fan", "divisor")
    add("classify", cmd_classify, "quotient type, weight group and class group", "presentation")
    add("sections", cmd_sections, "monomial basis of global sections", "fan", "divisor")
    add("irrelevant", cmd_irrelevant, "irrelevant ideal and saturated covering", "presentation")
    sp = add("vanishing", cmd_vanishing, "does the sheaf of S/I vanish?", "presentation", "ideal")
    sp.add_argument("--bound", type=int, default=6, help="coordinate bound of the cross-check")
    sp.add_argument("--power", type=int, default=6, help="power bound of the cross-check")
    sp = add("render", cmd_render, "draw a fan of rank 1 or 2 as SVG", "fan")
    sp.add_argument("out", nargs="?", help="output SVG path")
    sp = add("selftest", cmd_selftest, "randomized round trips over the fixture fans")
    sp.add_argument("--count", type=int, default=10, help="triangles per fan")
    sp.add_argument("--divisors", type=int, default=20, help="divisors per triangle")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except docs.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TriangleError as exc:
        print(f"error: triangle axiom '{exc.axiom}' failed: {exc}", file=sys.stderr)
        return 2
    except TorqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
