"""Command-line interface.

Subcommands: alexander, rep, cover, cyclic, stratify, bounds, table,
minimal, selftest.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources

from .algebra.modp import fp_factorization_str
from .algebra.polyz import laurent_str
from .bounds import family_bound
from .covers import Budget, BudgetExceeded, cover_homology, cyclic_cover_invariants, cyclic_table
from .diagrams import DiagramError, builtin_knot, knot_names, parse_pd, wirtinger
from .fox import alexander_mod_p, alexander_poly, check_congruence, check_props
from .pipeline import (DEFAULT_PRIMES, DiffOutcome, RunConfig, bound_report,
                       compute_cell, diff_cell, knot_study, minimal_report,
                       run_table)
from .reps import NoRepresentationError, build_rep, roots_of_delta_modp, verify_rep


class UsageError(Exception):
    pass


def _knot_arg(value: str):
    try:
        return builtin_knot(value), value
    except KeyError:
        pass
    try:
        return parse_pd(value), "custom"
    except DiagramError as e:
        raise UsageError(f"unknown knot and unparsable PD code: {e}") from None


def cmd_alexander(args) -> int:
    diagram, name = _knot_arg(args.knot)
    pres = wirtinger(diagram)
    delta = alexander_poly(pres)
    print(laurent_str(delta))
    primes = [args.mod] if args.mod else []
    for p in primes:
        reduced = alexander_mod_p(delta, p)
        if not reduced:
            print(f"mod {p}: 0")
            continue
        print(f"({fp_factorization_str(reduced, p)}, {p})")
    report = check_props(delta, diagram.crossing_count)
    if not report.ok:
        print(f"property check failed: {report}", file=sys.stderr)
        return 1
    if args.verbose:
        print(f"# determinant condition, symmetry, degree bound: all hold")
    return 0


def cmd_rep(args) -> int:
    study = knot_study(args.knot)
    delta_p = alexander_mod_p(study.delta, args.p)
    try:
        roots = roots_of_delta_modp(delta_p, args.p)
    except NoRepresentationError as e:
        print(f"no representation: {e}", file=sys.stderr)
        return 1
    out = []
    for root in roots:
        rep = build_rep(study.reduced, args.p, list(root.factor))
        verdict = verify_rep(rep, closure_limit=2000)
        if not verdict.ok:
            print(f"verification failed: {verdict}", file=sys.stderr)
            return 1
        out.append(rep.to_json())
    print(json.dumps(out, indent=2))
    return 0


def cmd_cover(args) -> int:
    cell = compute_cell(args.knot, args.p, Budget(args.budget),
                        stratify=False, peripheral_limit=args.budget,
                        preimage=(args.which == "preimage"))
    if cell.status == "trivial":
        print(f"{args.knot} mod {args.p}: trivial Alexander polynomial (no cover)")
        return 1
    print(json.dumps(cell.to_json(), indent=2))
    return 0


def cmd_cyclic(args) -> int:
    study = knot_study(args.knot)
    ci = cyclic_cover_invariants(study.delta, args.n)
    row = {"knot": args.knot, "n": args.n, "betti": ci.betti,
           "torsion_order": ci.torsion_order, "h1": str(ci.h1)}
    try:
        ch = cover_homology(study.reduced, cyclic_table(study.reduced, args.n),
                            "cyclic", budget=Budget(args.budget))
        row["h1_rewritten"] = str(ch.h1)
        row["agree"] = str(ch.h1) == str(ci.h1)
    except BudgetExceeded as e:
        row["h1_rewritten"] = f"skipped ({e})"
    print(json.dumps(row, indent=2))
    return 0 if row.get("agree", True) else 1


def cmd_stratify(args) -> int:
    from .strat import stratification_betti

    study = knot_study(args.knot)
    delta_p = alexander_mod_p(study.delta, args.p)
    try:
        roots = roots_of_delta_modp(delta_p, args.p)
    except NoRepresentationError as e:
        print(f"no representation: {e}", file=sys.stderr)
        return 1
    for root in roots:
        rep = build_rep(study.reduced, args.p, list(root.factor))
        res = stratification_betti(study.reduced, rep, delta=study.delta)
        print(json.dumps({
            "knot": args.knot, "p": args.p, "d": root.degree, "n": root.order,
            "betti": res.betti, "betti_cyclic": res.betti_cyclic,
            "character_classes": res.classes,
            "contributions": list(res.contributions)}))
    return 0


def cmd_bounds(args) -> int:
    rep = bound_report(args.knot)
    print(json.dumps(rep.to_json(), indent=2))
    return 0 if rep.ok else 1


def cmd_minimal(args) -> int:
    report = minimal_report(args.knot, cap=args.cap)
    print(report.line())
    return 0


def _render_paper_table(cells) -> str:
    by_knot: dict[str, dict[int, object]] = {}
    primes = sorted({c.p for c in cells})
    for c in cells:
        by_knot.setdefault(c.knot, {})[c.p] = c
    lines = []
    header = ["knot"] + [str(p) for p in primes]
    lines.append("  ".join(f"{h:>24}" for h in header))
    for knot in sorted(by_knot):
        upper = [knot]
        lower = [""]
        for p in primes:
            c = by_knot[knot].get(p)
            if c is None:
                upper.append("")
                lower.append("")
            elif c.status == "trivial":
                upper.append("empty")
                lower.append("empty")
            else:
                ups, lows = [], []
                for cl in c.classes:
                    if cl.kernel is None:
                        ups.append("skipped")
                        lows.append(str(cl.cyclic_closed.h1) if cl.cyclic_closed else "")
                    else:
                        ups.append(str(cl.kernel.h1))
                        lows.append(str(cl.cyclic.h1))
                upper.append("; ".join(dict.fromkeys(ups)))
                lower.append("; ".join(dict.fromkeys(lows)))
        lines.append("  ".join(f"{u:>24}" for u in upper))
        lines.append("  ".join(f"{v:>24}" for v in lower))
    return "\n".join(lines)


def _render_csv(cells) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["knot", "p", "status", "delta_mod_p", "modulus", "d", "n",
                     "degree", "kernel_h1", "cyclic_h1", "boundary",
                     "peripheral", "nonperipheral", "strat_betti",
                     "sandwich_ok", "torsion_ratio"])
    for c in cells:
        if c.status == "trivial":
            writer.writerow([c.knot, c.p, "trivial", c.factorization] + [""] * 12)
            continue
        for cl in c.classes:
            writer.writerow([
                c.knot, c.p, "ok" if cl.kernel else "skipped", c.factorization,
                " ".join(map(str, cl.modulus)), cl.d, cl.n, cl.n * c.p ** cl.d,
                str(cl.kernel.h1) if cl.kernel else (cl.kernel_skipped or ""),
                str(cl.cyclic.h1) if cl.cyclic else "",
                cl.kernel.boundary_components if cl.kernel else "",
                cl.kernel.peripheral_rank if cl.kernel else "",
                cl.kernel.nonperipheral_rank if cl.kernel else "",
                cl.strat_betti if cl.strat_betti is not None else "",
                cl.sandwich_ok if cl.sandwich_ok is not None else "",
                cl.torsion_ratio or ""])
    return buf.getvalue()


def load_golden(path: str | None = None) -> dict:
    if path:
        with open(path) as f:
            return json.load(f)
    return json.loads(resources.files("knotcover.data")
                      .joinpath("golden_tables.json").read_text())


def diff_against_golden(cells, golden) -> DiffOutcome:
    out = DiffOutcome()
    table = golden.get("table", {})
    for cell in cells:
        gk = table.get(cell.knot, {}).get(str(cell.p))
        if gk is None:
            continue
        _diff_one(cell, gk, out)
    return out


def _diff_one(cell, gk, out: DiffOutcome):
    from .pipeline import parse_group_spec

    tag = f"{cell.knot} p={cell.p}"
    if gk.get("trivial"):
        if cell.status != "trivial":
            out.mismatches.append(f"{tag}: expected trivial reduction mod p")
        else:
            out.checked += 1
        return
    if cell.status == "trivial":
        out.mismatches.append(f"{tag}: unexpectedly trivial mod p")
        return
    specs = gk["classes"]
    for cl in cell.classes:
        spec = next((s for s in specs if s.get("d", cl.d) == cl.d), None)
        if spec is None:
            out.mismatches.append(f"{tag}: no reference value for d={cl.d}")
            continue
        if cl.kernel is None:
            if gk.get("required"):
                out.mismatches.append(
                    f"{tag}: required cell skipped ({cl.kernel_skipped})")
            else:
                out.skipped.append(f"{tag} d={cl.d}: {cl.kernel_skipped}")
            continue
        upper = parse_group_spec(spec["upper"])
        lower = parse_group_spec(spec["lower"])
        if cl.kernel.h1 != upper:
            out.mismatches.append(f"{tag} d={cl.d}: upper {cl.kernel.h1} != {upper}")
        elif cl.cyclic.h1 != lower:
            out.mismatches.append(f"{tag} d={cl.d}: lower {cl.cyclic.h1} != {lower}")
        else:
            out.checked += 1


def cmd_table(args) -> int:
    knots = args.knots or [n for n in knot_names() if n != "unknot"]
    primes = args.primes or list(DEFAULT_PRIMES)
    config = RunConfig(tuple(knots), tuple(primes), Budget(args.budget),
                       peripheral_limit=min(args.budget, 400),
                       stratify=not args.no_stratify, workers=args.workers)
    cells = run_table(config)
    if args.format == "json":
        print(json.dumps([c.to_json() for c in cells], indent=2))
    elif args.format == "csv":
        sys.stdout.write(_render_csv(cells))
    else:
        print(_render_paper_table(cells))
    bad = []
    for c in cells:
        for cl in c.classes:
            if cl.boundary_ok is False or cl.sandwich_ok is False:
                bad.append((c.knot, c.p))
            if cl.strat_betti is not None and cl.kernel is not None \
                    and cl.strat_betti != cl.kernel.betti:
                bad.append((c.knot, c.p))
    if bad:
        print(f"verification failures: {bad}", file=sys.stderr)
        return 1
    if args.diff:
        golden = load_golden(None if args.diff == "-" else args.diff)
        outcome = diff_against_golden(cells, golden)
        print(f"# diff: {outcome.checked} cells match, "
              f"{len(outcome.skipped)} skipped, "
              f"{len(outcome.mismatches)} mismatches", file=sys.stderr)
        for m in outcome.mismatches:
            print(f"MISMATCH {m}", file=sys.stderr)
        if not outcome.ok:
            return 1
    return 0


def cmd_selftest(args) -> int:
    failures = []

    def check(label, got, want):
        ok = got == want
        print(f"{'ok  ' if ok else 'FAIL'} {label}: {got}" +
              ("" if ok else f" (want {want})"))
        if not ok:
            failures.append(label)

    study = knot_study("4_1")
    check("Delta(4_1)", laurent_str(study.delta), "t^2 - 3*t + 1")
    check("Delta(3_1)", laurent_str(knot_study("3_1").delta), "t^2 - t + 1")
    check("Delta(4_1) mod 11 roots",
          sorted(r.factor for r in roots_of_delta_modp(
              alexander_mod_p(study.delta, 11), 11)),
          [(2, 1), (6, 1)])
    cell = compute_cell("4_1", 2, Budget(100))
    check("4_1 p=2 kernel", str(cell.classes[0].kernel.h1), "[0^4, 2^2]")
    check("4_1 p=2 cyclic", str(cell.classes[0].cyclic.h1), "[0, 4^2]")
    check("4_1 p=2 boundary", cell.classes[0].kernel.boundary_components, 4)
    check("4_1 p=2 stratification", cell.classes[0].strat_betti, 4)
    check("congruence 4_1 mod 5",
          check_congruence(study.wirtinger, 5).ok, True)
    check("minimal 3_1", minimal_report("3_1", cap=4).line(),
          "3_1, 3: Yes, ((t + 1)^2, 3)")
    print("selftest:", "ok" if not failures else f"{len(failures)} failures")
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="knotcover",
        description="Finite metabelian knot group quotients, their covers, "
                    "and exact first homology")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alexander", help="Alexander polynomial and reductions")
    p.add_argument("knot")
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("rep", help="build the affine representations at a prime")
    p.add_argument("knot")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("cover", help="cover homology at a prime")
    p.add_argument("knot")
    p.add_argument("p", type=int)
    p.add_argument("--which", choices=["kernel", "preimage"], default="kernel")
    p.add_argument("--budget", type=int, default=200)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("cyclic", help="cyclic cover homology")
    p.add_argument("knot")
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int, default=200)
    p.set_defaults(func=cmd_cyclic)

    p = sub.add_parser("stratify", help="betti number via character ranks")
    p.add_argument("knot")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_stratify)

    p = sub.add_parser("bounds", help="cover degree bounds and achieved indices")
    p.add_argument("knot")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="homology table over a prime range")
    p.add_argument("--knots", nargs="*")
    p.add_argument("--primes", nargs="*", type=int)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--format", choices=["json", "csv", "paper-table"],
                   default="paper-table")
    p.add_argument("--diff", metavar="FILE",
                   help="compare against a golden table ('-' for the bundled one)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-stratify", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("minimal", help="minimal degree of a non-cyclic cover")
    p.add_argument("knot")
    p.add_argument("--cap", type=int, default=8)
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("selftest", help="quick end-to-end verification")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except KeyError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
