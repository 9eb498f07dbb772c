"""Command-line front end.

JSON results go to stdout with sorted keys; human-readable tables go to
stderr (suppress them with ``--json``).  Exit codes: 0 success, 1 invalid
graph or failed check, 2 inconsistent or missing analytic data, 3 I/O.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .blowup import blow_up_sequence, parse_center
from .construction import certify_pg_cycle, choose_W, run_construction, seed_C0
from .corpus import fixture_names, load_entry, run_entry
from .cycles import SingularityData, canonical_cycle, fundamental_cycle, is_numerically_gorenstein
from .elliptic import EllipticGroup, classify_ulrich
from .errors import (
    BlowupError,
    ConstructionError,
    GraphError,
    GraphMismatch,
    InconsistentAnalyticData,
    MissingAnalyticData,
)
from .graph import DualGraph
from .invariants import IdealDescriptor, report
from .io import InputError, load_json, parse_cycle, parse_graph, parse_ideal, parse_optional_int, to_jsonable

EXIT_OK, EXIT_INVALID, EXIT_ANALYTIC, EXIT_IO = 0, 1, 2, 3


def _emit(obj):
    print(json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":")))


def _table(args, rows, header=None):
    if args.json:
        return
    if header:
        print(header, file=sys.stderr)
    if not rows:
        print("  (none)", file=sys.stderr)
        return
    width = max(len(str(k)) for k, _ in rows)
    for k, v in rows:
        print(f"  {str(k).ljust(width)}  {v}", file=sys.stderr)


def _coeff_rows(z):
    return [(v, to_jsonable(c)) for v, c in sorted(z.items())]


def _graph(args):
    return parse_graph(load_json(args.graph))


def cmd_validate(args):
    data = load_json(args.graph)
    g = DualGraph.from_dict(data, check_definite=False)
    minors = g.form.leading_minors
    definite = g.form.is_negative_definite
    out = {
        "vertices": len(g),
        "edges": len(g.edges),
        "leading_minors": list(minors),
        "negative_definite": definite,
        "valid": True,
    }
    try:
        g.check_definite()
    except GraphError as exc:
        out["valid"] = False
        out["error"] = str(exc)
    _emit(out)
    _table(args, [(k, to_jsonable(v)) for k, v in sorted(out.items())], "graph check")
    return EXIT_OK if out["valid"] else EXIT_INVALID


def cmd_fundamental(args):
    z = fundamental_cycle(_graph(args))
    _emit(z.coefficients)
    _table(args, _coeff_rows(z), "fundamental cycle")
    return EXIT_OK


def cmd_canonical(args):
    g = _graph(args)
    z = canonical_cycle(g)
    _emit(z.coefficients)
    _table(args, _coeff_rows(z) + [("numerically Gorenstein", is_numerically_gorenstein(g))], "canonical cycle")
    return EXIT_OK


def cmd_blowup(args):
    g = _graph(args)
    maps = blow_up_sequence(g, [parse_center(c) for c in args.at])
    target = maps[-1].target if maps else g
    out = {"graph": target, "maps": [m.to_dict() for m in maps]}
    if args.cycle:
        z = parse_cycle(g, load_json(args.cycle))
        for m in maps:
            z = m.pullback(z)
        out["pullback"] = z.coefficients
    _emit(out)
    _table(args, [(m.new_vertex, m.center.label) for m in maps], "blow-ups (new curve, center)")
    return EXIT_OK


def _ideal_from_flags(args):
    g = _graph(args)
    flags = set(args.flag or ())
    kind = "rational" if args.rational else None
    sing = SingularityData(g, pg=parse_optional_int(args.pg, "pg"), gorenstein=args.gorenstein, kind=kind)
    if not args.cycle:
        raise GraphError("invariants needs --cycle (or --ideal)")
    z = parse_cycle(g, load_json(args.cycle))
    d = IdealDescriptor(
        sing,
        z,
        h1=parse_optional_int(args.h1, "h1"),
        integral_gap=parse_optional_int(args.gap, "gap"),
        no_fixed_component="no_fixed_component" in flags,
        generated="generated" in flags,
        stable="stable" in flags,
    )
    return d, []


def cmd_invariants(args):
    if args.ideal:
        d, history = parse_ideal(load_json(args.ideal))
    elif args.graph:
        d, history = _ideal_from_flags(args)
    else:
        raise GraphError("invariants needs --ideal FILE or --graph FILE --cycle FILE")
    out = report(d, history=history or None)
    _emit(out)
    rows = []
    for k, v in sorted(out.items()):
        rows.append((k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v))
    _table(args, rows, "invariants")
    return EXIT_OK


def cmd_construct(args):
    g = _graph(args)
    sing = SingularityData(
        g, pg=parse_optional_int(args.pg, "pg"), gorenstein=args.gorenstein, kind="rational" if args.rational else None
    )
    W = parse_cycle(g, load_json(args.W)) if args.W else choose_W(sing)
    if args.C0 in ("canonical", "W"):
        seed = seed_C0(sing, args.C0, W)
    else:
        seed = seed_C0(sing, parse_cycle(g, load_json(args.C0)), W)
    r = run_construction(sing, W, seed, shuffle_seed=args.seed)
    cert = certify_pg_cycle(r)
    out = {
        "Y": r.Y,
        "Z": r.Z.coefficients,
        "W": r.W.coefficients,
        "C0": r.C0.coefficients,
        "C_n": r.C.coefficients,
        "n": r.n,
        "KZ": r.KZ,
        "Zsq": r.Zsq,
        "sweeps": [{"step": s.step, "blown": list(s.blown), "carriers": list(s.carriers)} for s in r.sweeps],
        "certificates": {
            "checks": cert.checks,
            "passed": cert.passed,
            "good_certified": cert.good_certified,
            "multiplicity": cert.multiplicity,
            "conditional": cert.conditional,
            "seed_strategy": r.seed.strategy,
            "note": r.seed.note,
        },
    }
    _emit(out)
    if not args.json:
        print(f"W = {r.W!r}, C0 = {r.C0!r} ({r.seed.strategy})", file=sys.stderr)
        for s in r.sweeps:
            print(f"  sweep {s.step}: blew up {s.count} branch points on {sorted(set(s.carriers))}", file=sys.stderr)
            print(f"    C = {s.C_after!r}", file=sys.stderr)
        print(f"  n = {r.n}, -Z^2 = {-r.Zsq}, K Z = {r.KZ}", file=sys.stderr)
        for k, ok in cert.checks.items():
            print(f"  [{'ok' if ok else 'FAIL'}] {k}", file=sys.stderr)
    return EXIT_OK if cert.passed else EXIT_INVALID


def cmd_classify(args):
    model = EllipticGroup()
    cases = classify_ulrich(args.degree, model)
    out = {"degree": args.degree, "cases": [u.to_dict() for u in cases]}
    if args.group_samples:
        rng = random.Random(args.seed)
        reference = [u.to_dict() for u in cases]
        stable = all(
            [u.to_dict() for u in classify_ulrich(args.degree, model, model.random_element(rng))] == reference
            for _ in range(args.group_samples)
        )
        out["stable_across_base_classes"] = stable
    _emit(out)
    if not args.json:
        print(f"Ulrich ideals, simple elliptic of degree {args.degree}", file=sys.stderr)
        if not cases:
            print("  (none)", file=sys.stderr)
        for u in cases:
            kind = "integrally closed" if u.integral_gap == 0 else f"l(closure/I) = {u.integral_gap}"
            print(
                f"  {u.label:6} l(A/I) = {u.colength}  {kind:20} h1 = {u.h1}  "
                f"-Z^2 = {-u.Zsq}  K Z = {u.KZ}  -MZ = {u.MZ}  {u.parametrization.describe()}",
                file=sys.stderr,
            )
    return EXIT_OK


def cmd_corpus(args):
    known = fixture_names()
    names = args.name or known
    missing = [n for n in names if n not in known]
    if missing:
        raise InputError(f"no fixture named {', '.join(missing)}; available: {', '.join(known)}")
    failed = 0
    rows = []
    for name in names:
        for r in run_entry(load_entry(name)):
            failed += not r.ok
            rows.append({"entry": r.entry, "check": r.check, "ok": r.ok, "provenance": r.provenance,
                         "expected": r.expected, "actual": r.actual})
    _emit({"checks": len(rows), "failed": failed, "results": rows})
    if not args.json:
        for r in rows:
            print(f"  [{'ok' if r['ok'] else 'FAIL'}] {r['entry']}: {r['check']} ({r['provenance']})", file=sys.stderr)
        print(f"{len(rows) - failed}/{len(rows)} checks passed", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pgcycles", description="Exact cycle computations on resolution graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", required=True, help="graph JSON file")
        out = sp.add_mutually_exclusive_group()
        out.add_argument("--json", action="store_true", help="JSON only, no table on stderr")
        out.add_argument("--table", action="store_true", help="also print the table (default)")

    sp = sub.add_parser("validate", help="check a graph (structure, negative definiteness)")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("fundamental-cycle", help="Laufer's fundamental cycle")
    common(sp)
    sp.set_defaults(func=cmd_fundamental)

    sp = sub.add_parser("canonical-cycle", help="the canonical cycle Z_K")
    common(sp)
    sp.set_defaults(func=cmd_canonical)

    sp = sub.add_parser("blowup", help="blow up points; --at E0 (general point) or --at E1:E2 (intersection)")
    common(sp)
    sp.add_argument("--at", action="append", default=[], required=True, help="blow-up center")
    sp.add_argument("--cycle", help="cycle JSON to pull back")
    sp.set_defaults(func=cmd_blowup)

    sp = sub.add_parser("invariants", help="colength, multiplicity, mu bounds, p_g/good/Ulrich verdicts")
    common(sp, graph=False)
    sp.add_argument("--ideal", help="ideal descriptor JSON")
    sp.add_argument("--graph", help="graph JSON (with --cycle)")
    sp.add_argument("--cycle", help="cycle JSON")
    sp.add_argument("--pg", help="geometric genus, N or 'unknown'")
    sp.add_argument("--h1", help="h^1(O(-Z)), N or 'unknown'")
    sp.add_argument("--gap", help="l(closure(I)/I), N or 'unknown'")
    sp.add_argument("--gorenstein", action="store_true")
    sp.add_argument("--rational", action="store_true")
    sp.add_argument("--flag", action="append", choices=["generated", "no_fixed_component", "stable"])
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("construct-pg", help="build a p_g-cycle by blowing up branch points")
    common(sp)
    sp.add_argument("--pg", required=True, help="geometric genus")
    sp.add_argument("--gorenstein", action="store_true")
    sp.add_argument("--rational", action="store_true")
    sp.add_argument("--W", help="cycle JSON for W (default: the smallest admissible W)")
    sp.add_argument("--C0", default="canonical", help="canonical, W, or a cycle JSON file")
    sp.add_argument("--seed", type=int, help="shuffle blow-up order within sweeps")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("classify-elliptic", help="Ulrich ideals of a simple elliptic singularity")
    common(sp, graph=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--group-samples", type=int, default=0, help="re-run with N random base classes")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("corpus", help="worked-example fixtures")
    csub = sp.add_subparsers(dest="corpus_command", required=True)
    run = csub.add_parser("run", help="re-verify fixtures")
    common(run, graph=False)
    run.add_argument("--name", action="append", help="only this fixture (repeatable)")
    run.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InconsistentAnalyticData, MissingAnalyticData) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYTIC
    except (GraphError, GraphMismatch, BlowupError, ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
