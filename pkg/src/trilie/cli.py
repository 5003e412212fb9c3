"""Command-line frontend.

Reports go to stdout as JSON, a one-line summary goes to stderr. Exit codes:
0 when every check passes, 1 on identity violations, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any

from . import formats
from .exactlin import SingularMatrixError
from .families import (FAMILIES, LAURENT, OMEGA, UndefinedDenominatorError, Window,
                       check_reynolds_sampled, laurent_samples, materialize_window,
                       omega_samples)
from .formats import FormatError
from .nsnr import (check_ns_axioms, deformed_bracket, nijenhuis_report,
                   ns_from_nijenhuis, ns_from_trbo, reynolds_bracket, reynolds_report,
                   trbo_from_reynolds)
from .repcoh import (ResourceCapError, check_2cocycle, check_representation,
                     cohomology_dims, twisted_semidirect, verify_representation)
from .report import IdentityViolation, Report, TrilieError
from .threelie import check_fundamental_identity, derivation_report, verify
from . import trbo as trbo_mod

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Outcome:
    """What a command produced: a report, optional extra payload, optional structure."""

    def __init__(self, report: Report, payload: dict | None = None, structure: Any = None):
        self.report = report
        self.payload = payload or {}
        self.structure = structure


def _emit(structure, path: str | None) -> None:
    if path and structure is not None:
        formats.write(structure, path)


def _constructed(subject: str, structure, extra: dict | None = None) -> Outcome:
    rep = Report(subject)
    payload = {"result": formats.to_document(structure)}
    payload.update(extra or {})
    return Outcome(rep, payload, structure)


def _trbo(path: str, verify_operator: bool = True):
    A, rep, phi, T = formats.load(path, "trbo")
    ctx = trbo_mod.make_context(A, rep, phi)
    op = trbo_mod.TwistedRBO(ctx, T)
    return trbo_mod.verify_trbo(op) if verify_operator else op


def _cohomology_payload(rows) -> dict:
    return {"table": [{"degree": r.degree, "z": r.cocycles, "b": r.coboundaries,
                       "h": r.cohomology, "dim_c": r.cochains, "image": r.image}
                      for r in rows]}


def _rank_nullity(subject: str, rows) -> Report:
    report = Report(subject)
    for r in rows:
        report.compare(f"degree {r.degree}", [r.cocycles + r.image], [r.cochains],
                       identity="rank-nullity")
    return report


# -- command bodies ---------------------------------------------------------------

def cmd_check(args) -> Outcome:
    what = args.what
    if what == "fi":
        return Outcome(check_fundamental_identity(formats.load(args.file, "3lie")))
    if what == "rep":
        return Outcome(check_representation(formats.load(args.file, "rep")))
    if what == "ns":
        return Outcome(check_ns_axioms(formats.load(args.file, "ns")))
    if what == "cocycle":
        rep = verify_representation(formats.load(args.file, "rep"))
        return Outcome(check_2cocycle(rep, formats.load(args.other, "cochain")))
    A = formats.load(args.file, "3lie")
    data, ctx = formats.read_json(args.other)
    M = formats.matrix_from(data, A.dim, A.dim, ctx)
    if what == "derivation":
        return Outcome(derivation_report(A, M))
    A = verify(A)
    if what == "nijenhuis":
        return Outcome(nijenhuis_report(A, M))
    return Outcome(reynolds_report(A, M))


def cmd_construct(args) -> Outcome:
    what = args.what
    if what == "semidirect":
        rep = verify_representation(formats.load(args.file, "rep"))
        phi = formats.load(args.other, "cochain")
        S = twisted_semidirect(rep, phi)
        return _constructed("twisted semidirect product", S,
                            {"fundamental_identity": check_fundamental_identity(S).to_dict()})
    if what == "ns-from-trbo":
        ns = ns_from_trbo(_trbo(args.file))
        return _constructed("NS from twisted operator", ns)
    A = verify(formats.load(args.file, "3lie"))
    data, ctx = formats.read_json(args.other)
    M = formats.matrix_from(data, A.dim, A.dim, ctx)
    if what == "deform-n":
        return _constructed("deformed bracket", deformed_bracket(A, M))
    if what == "reynolds-bracket":
        return _constructed("Reynolds bracket", reynolds_bracket(A, M))
    if what == "ns-from-nijenhuis":
        return _constructed("NS from Nijenhuis", ns_from_nijenhuis(A, M))
    T = trbo_from_reynolds(A, M)
    if what == "ns-from-reynolds":
        return _constructed("NS from Reynolds", ns_from_trbo(T))
    return _constructed("twisted operator from Reynolds", T)


def cmd_trbo(args) -> Outcome:
    action = args.action
    if action == "check":
        op = _trbo(args.file, verify_operator=False)
        report = trbo_mod.check_twisted_rbo(op)
        graph = trbo_mod.graph_closure_report(op)
        return Outcome(report, {"graph_closure": graph.to_dict()})
    op = _trbo(args.file)
    if action == "induce":
        VT = trbo_mod.induced_bracket(op)
        varrho = trbo_mod.induced_rep_varrho(op)
        extra = {"varrho": formats.representation_to(varrho)["rho"],
                 "homomorphism": trbo_mod.homomorphism_report(VT, op.context.algebra, op.T).to_dict()}
        return _constructed("induced bracket", VT, extra)
    if action == "cohomology":
        rows = trbo_mod.trbo_cohomology_dims(op, args.nmax)
        return Outcome(_rank_nullity("twisted operator cohomology", rows), _cohomology_payload(rows))
    if action == "gauge":
        data, ctx = formats.read_json(args.other)
        f = formats.matrix_from(data, op.dimV, op.d, ctx)
        Tf = trbo_mod.t_admissible_gauge(op, f)
        iso = trbo_mod.gauge_isomorphism_report(op, f)
        out = _constructed("gauge transform", Tf, {"isomorphism": iso.to_dict()})
        out.report.merge(iso)
        return out
    raise AssertionError(action)


def cmd_deform(args) -> Outcome:
    (A, rep, phi, T), S1, S2, X = formats.load_deformation(args.file)
    op = trbo_mod.verify_trbo(trbo_mod.TwistedRBO(trbo_mod.make_context(A, rep, phi), T))
    if args.action == "check":
        report = trbo_mod.check_deformation(op, S1)
        if S2 is not None:
            report.merge(trbo_mod.check_deformation(op, S2))
        return Outcome(report)
    if S2 is None or X is None:
        raise FormatError("equivalence needs 'frakT2' and 'X'", args.file)
    report = trbo_mod.deformation_equivalence_report(op, S1, S2, *X)
    return Outcome(report)


def cmd_cohomology(args) -> Outcome:
    rep = verify_representation(formats.load(args.file, "rep"))
    rows = cohomology_dims(rep, args.nmax)
    return Outcome(_rank_nullity("cohomology", rows), _cohomology_payload(rows))


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise FormatError(f"malformed range {text!r}, expected a..b", "--range")


def cmd_family(args) -> Outcome:
    if args.action == "reynolds":
        lo, hi = _parse_range(args.range)
        samples = laurent_samples(lo, hi) if args.family == "laurent" else omega_samples(lo, hi)
        fam = LAURENT if args.family == "laurent" else OMEGA
        report = check_reynolds_sampled(fam, samples)
        return Outcome(report, {"samples": len(samples)})
    if args.family == "laurent":
        if args.lo is None or args.hi is None:
            raise FormatError("laurent window needs --lo and --hi", "window")
        window = Window("laurent", (args.lo, args.hi))
    else:
        window = Window("omega", (_parse_range(args.m), _parse_range(args.a)))
    P = materialize_window(args.family, window)
    A = P.truncated()
    report = P.restricted_fi_report()
    extra = {"basis": [str(b) for b in P.basis], "escaping": len(P.escaping()),
             "quotient": window.closed_above}
    out = _constructed(f"{args.family} window", A, extra)
    out.report = report
    return out


def cmd_property(args) -> Outcome:
    from . import properties
    fn = properties.PROPERTIES[args.name]
    return Outcome(fn(random.Random(args.seed), args.trials))


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", metavar="PATH", default=argparse.SUPPRESS,
                        help="write the constructed structure to PATH")
    p = argparse.ArgumentParser(prog="trilie", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run an identity checker")
    c.add_argument("what", choices=["fi", "derivation", "rep", "cocycle", "nijenhuis", "reynolds", "ns"])
    c.add_argument("file")
    c.add_argument("other", nargs="?", help="operator matrix or cochain file")
    c.set_defaults(func=cmd_check, needs_other={"derivation", "cocycle", "nijenhuis", "reynolds"})

    k = sub.add_parser("construct", parents=[common], help="build an induced structure")
    k.add_argument("what", choices=["semidirect", "deform-n", "reynolds-bracket", "ns-from-trbo",
                                    "ns-from-nijenhuis", "ns-from-reynolds", "trbo-from-reynolds"])
    k.add_argument("file")
    k.add_argument("other", nargs="?")
    k.set_defaults(func=cmd_construct, needs_other={"semidirect", "deform-n", "reynolds-bracket",
                                                    "ns-from-nijenhuis", "ns-from-reynolds",
                                                    "trbo-from-reynolds"})

    t = sub.add_parser("trbo", parents=[common], help="twisted Rota-Baxter operators")
    tsub = t.add_subparsers(dest="action", required=True)
    for name in ("check", "induce"):
        q = tsub.add_parser(name, parents=[common])
        q.add_argument("file")
        q.set_defaults(func=cmd_trbo)
    q = tsub.add_parser("cohomology", parents=[common])
    q.add_argument("file")
    q.add_argument("--nmax", type=int, default=3)
    q.set_defaults(func=cmd_trbo)
    q = tsub.add_parser("gauge", parents=[common])
    q.add_argument("file")
    q.add_argument("other", help="matrix of f: g -> V")
    q.set_defaults(func=cmd_trbo)
    q = tsub.add_parser("deform", parents=[common])
    q.add_argument("action", choices=["check", "equiv"])
    q.add_argument("file")
    q.set_defaults(func=cmd_deform)

    h = sub.add_parser("cohomology", parents=[common], help="cohomology of a representation")
    h.add_argument("file")
    h.add_argument("--nmax", type=int, default=3)
    h.set_defaults(func=cmd_cohomology)

    f = sub.add_parser("family", parents=[common], help="Laurent and w-infinity families")
    f.add_argument("family", choices=sorted(FAMILIES))
    f.add_argument("action", choices=["reynolds", "window"])
    f.add_argument("--range", default="-5..6")
    f.add_argument("--lo", type=int)
    f.add_argument("--hi", type=int)
    f.add_argument("--m", default="0..2", help="mode range for w-infinity windows")
    f.add_argument("--a", default="0..2", help="weight range for w-infinity windows")
    f.set_defaults(func=cmd_family)

    r = sub.add_parser("property", parents=[common], help="randomized property runs")
    r.add_argument("name", choices=["dd", "trbo-graph", "nijenhuis", "reynolds-roundtrip",
                                    "deformation"])
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=10)
    r.set_defaults(func=cmd_property)
    return p


def _glue_ranges(argv: list[str]) -> list[str]:
    """Let ``--range -5..6`` through; argparse would read ``-5..6`` as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--range", "--m", "--a"):
            out.append(f"{tok}={next(it, '')}")
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_ranges(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    needs = getattr(args, "needs_other", set())
    if getattr(args, "what", None) in needs and not args.other:
        print(f"error: '{args.what}' needs a second file argument", file=err)
        return EXIT_INPUT
    try:
        outcome = args.func(args)
    except IdentityViolation as exc:
        doc = exc.report.to_dict()
        print(json.dumps(doc, indent=2), file=out)
        print(exc.report.summary(), file=err)
        return EXIT_FAIL
    except (FormatError, UndefinedDenominatorError, ResourceCapError,
            SingularMatrixError, TrilieError) as exc:
        doc = {"outcome": "error", "error": str(exc), "kind": type(exc).__name__}
        print(json.dumps(doc, indent=2), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    doc = outcome.report.to_dict()
    doc.update(outcome.payload)
    print(json.dumps(doc, indent=2), file=out)
    print(outcome.report.summary(), file=err)
    _emit(outcome.structure, getattr(args, "emit", None))
    return EXIT_PASS if outcome.report.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
