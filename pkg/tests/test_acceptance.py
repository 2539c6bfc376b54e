"""Acceptance suite: the quantitative claims reproduced at desk scale.

Each criterion is one test printing a PASS/FAIL line (run with -s to watch).
The homology table is computed once at the acceptance budget and shared.

One documented deviation: the 5_2 mod 3 cyclic-cover row.  The printed
source value [0, 3^3] contradicts the closed-form torsion product
|Delta(1) Delta(-1) Delta(i) Delta(-i)| = 63 for the 4-fold cyclic cover;
both independent pipelines here compute [0, 3^2, 7] (order 63), which is
what the golden file pins (the printed value is stored alongside).
"""

import random
import time

import pytest

from knotcover.algebra.polyz import Laurent, laurent_str
from knotcover.bounds import det_coeff_bound_check, family_bound
from knotcover.cli import load_golden
from knotcover.covers import Budget, cover_homology, cyclic_cover_invariants, cyclic_table
from knotcover.diagrams import builtin_knot, knot_names, wirtinger
from knotcover.fox import (alexander_mod_p, alexander_poly, check_congruence,
                           check_props)
from knotcover.pipeline import (bound_report, compute_cell, knot_study,
                                minimal_report, parse_group_spec)
from knotcover.presentations import GroupPresentation
from knotcover.reps import (NoRepresentationError, build_rep,
                            conjugate_scaled_equivalent, roots_of_delta_modp,
                            verify_rep)

GOLDEN = load_golden()
ACCEPT_BUDGET = Budget(degree=1200, matrix_cells=4_000_000)

REQUIRED_CELLS = [(knot, int(p))
                  for knot, by_p in GOLDEN["table"].items()
                  for p, spec in by_p.items()
                  if spec.get("required") or spec.get("trivial")]

CORPUS = [n for n in knot_names() if n != "unknot"]


def _report(criterion, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {criterion}" + (f": {detail}" if detail else "")
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def computed_cells():
    cells = {}
    total0 = time.time()
    for knot, p in REQUIRED_CELLS:
        t0 = time.time()
        cells[(knot, p)] = compute_cell(knot, p, ACCEPT_BUDGET, stratify=True,
                                        peripheral_limit=400)
        elapsed = time.time() - t0
        assert elapsed < 60, f"{knot} p={p} took {elapsed:.1f}s (limit 60s)"
    total = time.time() - total0
    assert total < 900, f"table suite took {total:.0f}s (limit 15 min)"
    print(f"# table suite: {len(cells)} cells in {total:.1f}s")
    return cells


def test_criterion_1_golden_polynomials_and_factorizations():
    t0 = time.time()
    d41 = alexander_poly(wirtinger(builtin_knot("4_1")))
    d31 = alexander_poly(wirtinger(builtin_knot("3_1")))
    ok = (laurent_str(d41) == "t^2 - 3*t + 1"
          and laurent_str(d31) == "t^2 - t + 1"
          and time.time() - t0 < 1.0)
    lines_ok = []
    for knot, spec in GOLDEN["minimal"].items():
        want = spec["line"].split(": ", 1)[1].split(", ", 1)[1]
        got = ", ".join(f"({s}, {p})"
                        for s, p in minimal_report(knot, cap=spec["degree"]).factorizations)
        lines_ok.append(got == want)
    _report("criterion 1 (golden polynomials, 13 factorization entries verbatim)",
            ok and all(lines_ok))


def test_criterion_2_worked_example():
    t0 = time.time()
    fiber = GroupPresentation(3, ((1, 2, -1, -2, -3, -2), (1, 3, -1, -2, -3)),
                              meridian_index=1)
    roots = roots_of_delta_modp(
        alexander_mod_p(alexander_poly(fiber), 11), 11)
    root_values = sorted((-f[0]) % 11 for f, _, _ in
                         ((r.factor, r.degree, r.order) for r in roots))
    rep = build_rep(fiber, 11, [-5 % 11, 1])
    equivalent = conjugate_scaled_equivalent(rep, [(0,), (1,), (3,)])
    study = knot_study("4_1")
    wrep = build_rep(study.reduced, 11, [-5 % 11, 1])
    order_ok = verify_rep(wrep, closure_limit=100).closure_order == 55
    ok = (root_values == [5, 9] and equivalent and rep.image_order == 55
          and order_ok and time.time() - t0 < 1.0)
    _report("criterion 2 (figure-8 worked example: roots {5,9}, "
            "t->5z x->z+1 y->z+3, image order 55)", ok)


def test_criterion_3_table_cells(computed_cells):
    failures = []
    checked = 0
    for (knot, p), cell in computed_cells.items():
        spec = GOLDEN["table"][knot][str(p)]
        if spec.get("trivial"):
            if cell.status != "trivial":
                failures.append(f"{knot}@{p}: expected trivial")
            else:
                checked += 1
            continue
        for cl in cell.classes:
            ref = next((s for s in spec["classes"] if s.get("d", cl.d) == cl.d), None)
            if ref is None or cl.kernel is None:
                failures.append(f"{knot}@{p}: missing data for d={cl.d}")
                continue
            upper = parse_group_spec(ref["upper"])
            lower = parse_group_spec(ref["lower"])
            if cl.kernel.h1 != upper:
                failures.append(f"{knot}@{p} d={cl.d}: upper {cl.kernel.h1} != {upper}")
            elif cl.cyclic.h1 != lower:
                failures.append(f"{knot}@{p} d={cl.d}: lower {cl.cyclic.h1} != {lower}")
            else:
                checked += 1
            if ref.get("printed_lower"):
                print(f"# note {knot}@{p}: lower row pinned to {lower} "
                      f"(source printed {ref['printed_lower']}; see note in golden file)")
    _report("criterion 3 (homology table cells, both rows exact)",
            not failures, f"{checked} cells" + ("" if not failures else f"; {failures}"))


def test_criterion_4_cross_pipeline_betti(computed_cells):
    bad = []
    n = 0
    for (knot, p), cell in computed_cells.items():
        for cl in cell.classes:
            if cl.kernel is None or cl.strat_betti is None:
                continue
            n += 1
            if cl.strat_betti != cl.kernel.betti:
                bad.append((knot, p, cl.strat_betti, cl.kernel.betti))
    _report("criterion 4 (character-variety betti == Smith-form betti, zero tolerance)",
            not bad and n >= 20, f"{n} covers cross-checked")


def test_criterion_5_betti_sandwich_and_boundary(computed_cells):
    bad = []
    n = 0
    for (knot, p), cell in computed_cells.items():
        for cl in cell.classes:
            if cl.kernel is None:
                continue
            n += 1
            if not cl.sandwich_ok or not cl.boundary_ok:
                bad.append((knot, p, cl.sandwich, cl.boundary_ok))
    _report("criterion 5 (betti bounds hold, boundary count = p^d exactly)",
            not bad and n >= 20, f"{n} covers")


def test_criterion_6_closed_form_cyclic_invariants():
    bad = []
    for name in CORPUS:
        study = knot_study(name)
        for n in range(1, 11):
            closed = cyclic_cover_invariants(study.delta, n)
            ch = cover_homology(study.reduced, cyclic_table(study.reduced, n),
                                "cyclic", peripheral=False)
            if (ch.betti, ch.torsion_order) != (closed.betti, closed.torsion_order):
                bad.append((name, n))
    spot = cyclic_cover_invariants(knot_study("4_1").delta, 3)
    ok = not bad and (spot.betti, spot.torsion_order) == (1, 16)
    _report("criterion 6 (closed-form cyclic invariants == rewriting, n <= 10)",
            ok, f"{len(CORPUS) * 10} covers, zero tolerance")


def test_criterion_7_torsion_ratio_verdicts(computed_cells):
    verdicts_41 = [cl.torsion_ratio
                   for p in (2, 3, 5, 11)
                   for cl in computed_cells[("4_1", p)].classes]
    fails_52 = [cl.torsion_ratio for cl in computed_cells[("5_2", 3)].classes]
    ok = all(v == "holds" for v in verdicts_41) and \
        all(v == "fails" for v in fails_52)
    _report("criterion 7 (torsion ratio holds for 4_1, fails for 5_2 at p=3)", ok)


def test_criterion_8_minimal_noncyclic_degrees():
    t0 = time.time()
    bad = []
    for knot, spec in GOLDEN["minimal"].items():
        rep = minimal_report(knot, cap=8)
        if rep.line() != spec["line"]:
            bad.append((knot, rep.line(), spec["line"]))
    elapsed = time.time() - t0
    _report("criterion 8 (13 minimal non-cyclic cover degrees, verbatim lines)",
            not bad and elapsed < 600, f"{elapsed:.0f}s" + (f"; {bad}" if bad else ""))


def _random_valid_matrix(rng, n):
    from knotcover.bounds import ALLOWED_ENTRIES
    zero, one, t, t1 = ALLOWED_ENTRIES
    rows = []
    for _ in range(n):
        entries = [zero] * n
        picks = rng.sample(range(n), k=min(n, rng.randrange(1, 4)))
        pool = rng.sample([one, t, t1], k=len(picks))
        for j, e in zip(picks, pool):
            entries[j] = e
        rows.append(entries)
    return rows


def test_criterion_9_property_suites(computed_cells):
    rng = random.Random(2024)
    violations = 0
    for _ in range(1000):
        n = rng.randrange(1, 8)
        out = det_coeff_bound_check(_random_valid_matrix(rng, n))
        if not out["ok"]:
            violations += 1
    congruence_bad = []
    for name in CORPUS:
        pres = knot_study(name).wirtinger
        for p in (2, 3, 5, 7, 11, 13):
            r = check_congruence(pres, p, name=name, max_minor_count=500)
            if not r.ok:
                congruence_bad.append((name, p))
    props_ok = all(check_props(knot_study(n).delta,
                               knot_study(n).crossing_count).ok for n in CORPUS)
    reps_ok = all(cl.rep_verified
                  for cell in computed_cells.values()
                  for cl in cell.classes)
    _report("criterion 9 (coefficient bound x1000, reduction congruence, "
            "polynomial properties, representation verification)",
            violations == 0 and not congruence_bad and props_ok and reps_ok,
            f"congruence checked for {len(CORPUS)} knots x 6 primes")


def test_criterion_10_degree_bounds():
    bad = [n for n in CORPUS if not bound_report(n).ok]
    rep41 = bound_report("4_1")
    tight = rep41.achieved_irregular == rep41.family.bound == 4
    _report("criterion 10 (achieved indices within bounds; figure-8 attains "
            "the genus bound 4 exactly)", not bad and tight)
