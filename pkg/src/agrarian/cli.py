"""Command line interface: ``agr betti|torsion|polytope|bns|check``.

Every command prints one JSON document on stdout.  Exit codes: 0 success,
1 an invariant check failed (``check`` only), 2 precondition failure
(deficiency, acyclicity, admissibility, character), 3 unreadable input.
"""

import argparse
import json
import random
import sys

from . import __version__
from .complexes import presentation_complex, specialize
from .errors import (
    AgrarianError,
    ExpressionSyntaxError,
    NoAdmissibleGenerator,
    NotAcyclic,
    NotAVertex,
    PolytopeMismatch,
    PresentationSyntaxError,
    RankTooLargeForFaces,
    WrongDeficiency,
    ZeroCharacter,
)
from .invariants import betti_numbers, chain_contraction, same_class, torsion, torsion_normal_form
from .pipeline import bns_query, parse_character, run_pipeline, torsion_polytope
from .polytopes import MarkedPolytope, difference_equal, polytope_svg, write_svg
from .presentations import format_presentation, parse_presentation
from .twisted import AgrarianMap

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PRECONDITION = 2
EXIT_INPUT = 3

PRECONDITION_ERRORS = (
    WrongDeficiency,
    NotAcyclic,
    NoAdmissibleGenerator,
    ZeroCharacter,
    PolytopeMismatch,
    RankTooLargeForFaces,
)


class InputError(Exception):
    def __init__(self, kind, message, **extra):
        super().__init__(message)
        self.kind = kind
        self.extra = extra


def _emit(doc):
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _error_doc(command, kind, message, **extra):
    err = {"type": kind, "message": message}
    err.update(extra)
    return {"command": command, "ok": False, "error": err}


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("FileError", f"cannot read {path}: {exc.strerror}") from None


def _load_presentation(path):
    text = _read_text(path)
    try:
        return parse_presentation(text), text
    except PresentationSyntaxError as exc:
        raise InputError(type(exc).__name__, exc.message, line=exc.line, column=exc.column) from None


def _make_map(P, kind):
    if kind == "augmentation":
        return AgrarianMap.augmentation(P)
    return AgrarianMap.abelianisation(P)


def _not_acyclic_extra(exc):
    report = exc.report
    betti = getattr(report, "betti", report)
    return {"betti": betti.to_json()} if betti is not None else {}


# commands


def cmd_betti(args):
    P, _ = _load_presentation(args.file)
    alpha = _make_map(P, args.map)
    C = specialize(presentation_complex(P), alpha)
    report = betti_numbers(C)
    return EXIT_OK, {
        "command": "betti",
        "ok": True,
        "presentation": format_presentation(P),
        "map": alpha.describe(),
        "ranks": [C.rank(n) for n in C.degrees],
        "betti": report.to_json(),
    }


def _deficiency_one_complex(P):
    if P.deficiency != 1:
        raise WrongDeficiency(f"deficiency {P.deficiency}, expected 1")
    alpha = AgrarianMap.abelianisation(P)
    return alpha, specialize(presentation_complex(P), alpha)


def cmd_torsion(args):
    P, _ = _load_presentation(args.file)
    alpha, C = _deficiency_one_complex(P)
    tau = torsion(C)
    return EXIT_OK, {
        "command": "torsion",
        "ok": True,
        "presentation": format_presentation(P),
        "map": alpha.describe(),
        "torsion": tau.to_json(),
        "normalForm": torsion_normal_form(tau).to_json(),
    }


def cmd_polytope(args):
    P, _ = _load_presentation(args.file)
    report = run_pipeline(P)
    doc = {"command": "polytope", "ok": True}
    doc.update(report.to_json())
    poly = report.polytope()
    if args.svg:
        if poly is None or poly.rank > 2:
            raise RankTooLargeForFaces("SVG output needs a single polytope of rank at most 2")
        write_svg(args.svg, polytope_svg(poly, scale=args.scale, grid=not args.no_grid))
        doc["svg"] = args.svg
    return EXIT_OK, doc


def _load_marking(path):
    text = _read_text(path)
    try:
        return MarkedPolytope.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError, NotAVertex) as exc:
        raise InputError("MarkingError", f"malformed marking {path}: {exc}") from None


def cmd_bns(args):
    P, _ = _load_presentation(args.file)
    marking = _load_marking(args.marking)
    try:
        phi = parse_character(args.char)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("CharacterError", str(exc)) from None
    report = run_pipeline(P)
    if len(phi) != report.alpha.twist.lattice.rank:
        raise InputError(
            "CharacterError",
            f"character has {len(phi)} entries, lattice rank is {report.alpha.twist.lattice.rank}",
        )
    member = bns_query(report, phi, marking)
    return EXIT_OK, {
        "command": "bns",
        "ok": True,
        "presentation": format_presentation(P),
        "character": [str(a) for a in phi],
        "polytope": report.polytope().to_json(),
        "member": member,
    }


def _run_checks(P, text, seed):
    """The invariant battery; each entry is (name, status, detail)."""
    checks = []

    def add(name, ok, detail=None, skipped=False):
        status = "skipped" if skipped else ("pass" if ok else "fail")
        checks.append({"name": name, "status": status, "detail": detail})

    printed = format_presentation(P)
    add("roundTrip", format_presentation(parse_presentation(printed)) == printed,
        "canonical file" if printed == text else "file not in canonical form")
    alpha = AgrarianMap.abelianisation(P)
    C = specialize(presentation_complex(P), alpha)
    pairs = [n for n in C.degrees if n - 2 in C.degrees]
    chain_ok = all((C.d(n) * C.d(n - 1)).is_zero() for n in pairs)
    add("chainCondition", chain_ok, "d2 d1 = 0 after specialisation")
    report = betti_numbers(C)
    betti_ec = sum((-1) ** n * b for n, b in report.per_degree.items())
    add("eulerPoincare", betti_ec == report.euler_characteristic,
        {"betti": betti_ec, "ranks": report.euler_characteristic})
    add("bettiBounds", all(0 <= report.per_degree[n] <= C.rank(n) for n in C.degrees))
    if P.deficiency != 1:
        for name in ("pipelineConsistency", "torsionAgreement", "contractionIndependence"):
            add(name, True, f"deficiency {P.deficiency}", skipped=True)
        return checks
    if not report.acyclic:
        for name in ("pipelineConsistency", "torsionAgreement", "contractionIndependence"):
            add(name, True, {"nonzeroBetti": {str(k): v for k, v in report.nonzero().items()}}, skipped=True)
        return checks
    try:
        pipe = run_pipeline(P)
    except NoAdmissibleGenerator as exc:
        add("pipelineConsistency", True, str(exc), skipped=True)
        add("torsionAgreement", True, str(exc), skipped=True)
    else:
        add("pipelineConsistency", pipe.consistency)
        tp = torsion_polytope(pipe.complex)
        add("torsionAgreement", difference_equal(tp, pipe.agrarian_polytope, True))
    rng = random.Random(seed)
    t1 = torsion(C, chain_contraction(C, rng))
    t2 = torsion(C, chain_contraction(C, rng))
    add("contractionIndependence", same_class(t1.representative, t2.representative, "sign"))
    return checks


def cmd_check(args):
    P, text = _load_presentation(args.file)
    checks = _run_checks(P, text, args.seed)
    ok = all(c["status"] != "fail" for c in checks)
    doc = {
        "command": "check",
        "ok": ok,
        "presentation": format_presentation(P),
        "checks": checks,
    }
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), doc


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: JSON on stdout and exit code 3."""

    def error(self, message):
        _emit(_error_doc(None, "UsageError", message))
        sys.exit(EXIT_INPUT)


def build_parser():
    parser = _Parser(prog="agr", description="Agrarian invariants of group presentations.")
    parser.add_argument("--version", action="version", version=f"agr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="agrarian Betti numbers of the presentation complex")
    p.add_argument("file")
    p.add_argument("--map", choices=("abelianisation", "augmentation"), default="abelianisation")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("torsion", help="torsion of the specialised presentation complex")
    p.add_argument("file")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("polytope", help="agrarian polytope via the deficiency-one pipeline")
    p.add_argument("file")
    p.add_argument("--svg", metavar="OUT", help="also draw the polytope (rank <= 2)")
    p.add_argument("--scale", type=int, default=40, help="pixels per lattice unit")
    p.add_argument("--no-grid", action="store_true", help="omit the lattice grid")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("bns", help="marked-vertex membership of a character")
    p.add_argument("file")
    p.add_argument("--marking", required=True, help="marked polytope JSON")
    p.add_argument("--char", required=True, help='character values, e.g. "1,-2"')
    p.set_defaults(func=cmd_bns)

    p = sub.add_parser("check", help="run the invariant battery")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def _attach_char(argv):
    # argparse reads a value like "-1,2" as an option, so glue it to the flag
    out = []
    it = iter(argv)
    for a in it:
        if a == "--char":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--char={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_attach_char(sys.argv[1:] if argv is None else argv))
    try:
        code, doc = args.func(args)
    except InputError as exc:
        code, doc = EXIT_INPUT, _error_doc(args.command, exc.kind, str(exc), **exc.extra)
    except NotAcyclic as exc:
        code = EXIT_PRECONDITION
        doc = _error_doc(args.command, "NotAcyclic", str(exc), **_not_acyclic_extra(exc))
    except PRECONDITION_ERRORS as exc:
        code, doc = EXIT_PRECONDITION, _error_doc(args.command, type(exc).__name__, str(exc))
    except ExpressionSyntaxError as exc:
        code, doc = EXIT_INPUT, _error_doc(args.command, type(exc).__name__, str(exc))
    except AgrarianError as exc:
        code, doc = EXIT_PRECONDITION, _error_doc(args.command, type(exc).__name__, str(exc))
    _emit(doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
