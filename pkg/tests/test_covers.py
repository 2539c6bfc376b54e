"""Coset tables, subgroup rewriting, cover homology, and verdicts."""

import pytest

from knotcover.covers import (Budget, BudgetExceeded, betti_sandwich,
                              cover_homology, cyclic_cover_invariants,
                              cyclic_table, kernel_table,
                              preimage_alpha_table, rs_presentation,
                              torsion_ratio_check)
from knotcover.diagrams import builtin_knot, wirtinger
from knotcover.fox import alexander_mod_p, alexander_poly
from knotcover.presentations import drop_redundant_relator, reduce_presentation
from knotcover.reps import build_rep, roots_of_delta_modp


def _reduced(name):
    pres = wirtinger(builtin_knot(name))
    red, _ = reduce_presentation(drop_redundant_relator(pres))
    return pres, red


def _rep(name, p, factor=None):
    pres, red = _reduced(name)
    delta = alexander_poly(pres)
    roots = roots_of_delta_modp(alexander_mod_p(delta, p), p)
    root = roots[0] if factor is None else \
        next(r for r in roots if list(r.factor) == factor)
    return red, build_rep(red, p, list(root.factor)), delta


def test_cyclic_table_shape():
    _, red = _reduced("3_1")
    t = cyclic_table(red, 1)
    assert t.degree == 1 and t.is_transitive()
    t6 = cyclic_table(red, 6)
    assert t6.degree == 6 and t6.is_transitive() and t6.relators_close(red)


def test_kernel_table_trefoil_p3():
    red, rep, _ = _rep("3_1", 3)
    tab = kernel_table(rep)
    assert tab.degree == 6
    assert tab.is_transitive() and tab.relators_close(red)


def test_kernel_table_figure8_p11():
    red, rep, _ = _rep("4_1", 11)
    tab = kernel_table(rep)
    assert tab.degree == 55
    assert tab.relators_close(red)


def test_preimage_table_degree():
    red, rep, _ = _rep("3_1", 2)
    tab = preimage_alpha_table(rep)
    assert tab.degree == 4
    assert tab.is_transitive() and tab.relators_close(red)


def test_rs_euler_characteristic():
    _, red = _reduced("3_1")
    assert red.num_generators == 2 and len(red.relators) == 1
    sub, data = rs_presentation(red, cyclic_table(red, 2))
    assert sub.num_generators == 3 and len(sub.relators) == 2
    for n in (1, 3, 5):
        subn, _ = rs_presentation(red, cyclic_table(red, n))
        assert subn.num_generators == n * (red.num_generators - 1) + 1


def test_rs_degree_one_is_identity():
    _, red = _reduced("4_1")
    sub, _ = rs_presentation(red, cyclic_table(red, 1))
    assert sub.num_generators == red.num_generators
    assert sorted(len(r) for r in sub.relators) == sorted(len(r) for r in red.relators)


def test_cyclic_homology_values():
    _, red = _reduced("3_1")
    got = {n: str(cover_homology(red, cyclic_table(red, n), "cyclic").h1)
           for n in (2, 3, 6)}
    assert got == {2: "[0, 3]", 3: "[0, 2^2]", 6: "[0^3]"}
    _, red41 = _reduced("4_1")
    assert str(cover_homology(red41, cyclic_table(red41, 3), "cyclic").h1) == "[0, 4^2]"


def test_closed_form_matches_rewriting_for_corpus():
    from knotcover.diagrams import knot_names
    for name in knot_names():
        if name == "unknot":
            continue
        pres, red = _reduced(name)
        delta = alexander_poly(pres)
        for n in range(1, 11):
            closed = cyclic_cover_invariants(delta, n)
            ch = cover_homology(red, cyclic_table(red, n), "cyclic",
                                peripheral=False)
            assert (ch.h1.free_rank, ch.h1.torsion) == \
                (closed.h1.free_rank, closed.h1.torsion), (name, n)
            assert ch.betti == closed.betti
            assert ch.torsion_order == closed.torsion_order


def test_closed_form_examples():
    ci = cyclic_cover_invariants(alexander_poly(wirtinger(builtin_knot("4_1"))), 3)
    assert (ci.betti, ci.torsion_order) == (1, 16)
    tre = alexander_poly(wirtinger(builtin_knot("3_1")))
    assert cyclic_cover_invariants(tre, 6).betti == 3
    from knotcover.algebra.polyz import Laurent
    assert cyclic_cover_invariants(Laurent.one(), 5) == \
        cyclic_cover_invariants(Laurent.one(), 5)
    triv = cyclic_cover_invariants(Laurent.one(), 7)
    assert (triv.betti, triv.torsion_order) == (1, 1)
    with pytest.raises(ValueError):
        cyclic_cover_invariants(tre, 0)


def test_boundary_components():
    red, rep, _ = _rep("4_1", 11)
    ch = cover_homology(red, kernel_table(rep), "kernel")
    assert ch.boundary_components == 11
    red2, rep2, _ = _rep("3_1", 2)
    ch2 = cover_homology(red2, kernel_table(rep2), "kernel")
    assert ch2.boundary_components == 4
    # a cyclic cover has a single boundary torus
    chc = cover_homology(red2, cyclic_table(red2, 5), "cyclic")
    assert chc.boundary_components == 1


def test_peripheral_ranks():
    _, red = _reduced("4_1")
    for n in range(1, 7):
        ch = cover_homology(red, cyclic_table(red, n), "cyclic")
        assert ch.nonperipheral_rank == 0, n
    red31, rep, _ = _rep("3_1", 5)
    ch = cover_homology(red31, kernel_table(rep), "kernel", budget=Budget(200))
    assert ch.betti == 27 and ch.nonperipheral_rank and ch.nonperipheral_rank > 0


def test_kernel_homology_table_rows():
    expect = {
        ("3_1", 2): ("[0^4]", "[0, 2^2]"),
        ("4_1", 2): ("[0^4, 2^2]", "[0, 4^2]"),
        ("6_1", 3): ("[0^3, 3]", "[0, 9]"),
    }
    for (name, p), (up, low) in expect.items():
        red, rep, delta = _rep(name, p)
        ch = cover_homology(red, kernel_table(rep), "kernel")
        cyc = cover_homology(red, cyclic_table(red, rep.order_alpha), "cyclic")
        assert str(ch.h1) == up and str(cyc.h1) == low


def test_budget_guard():
    red, rep, _ = _rep("3_1", 5)
    with pytest.raises(BudgetExceeded):
        cover_homology(red, kernel_table(rep), "kernel", budget=Budget(degree=100))


def test_betti_sandwich_values():
    # trefoil at p=3: bounds [3, 9], betti 3: tight at the lower bound
    sw = betti_sandwich(3, 2, 3, 1, 3, 1)
    assert sw.ok and sw.lower == 3 and sw.lower_tight
    # figure-8 at p=2: betti 4 = p^d with cyclic betti 1
    sw = betti_sandwich(4, 3, 2, 2, 4, 1)
    assert sw.ok and sw.lower == 4
    # trefoil at p=5: betti 27 = p^2 + 2
    sw = betti_sandwich(3, 6, 5, 2, 27, 3)
    assert sw.ok and not sw.upper_tight


def test_torsion_ratio_statuses():
    red, rep, delta = _rep("4_1", 2)
    ch = cover_homology(red, kernel_table(rep), "kernel")
    closed = cyclic_cover_invariants(delta, rep.order_alpha)
    assert torsion_ratio_check(ch, closed, 2, 2).status == "holds"  # 4 = 16/4
    red2, rep2, delta2 = _rep("5_2", 3)
    ch2 = cover_homology(red2, kernel_table(rep2), "kernel")
    closed2 = cyclic_cover_invariants(delta2, rep2.order_alpha)
    assert torsion_ratio_check(ch2, closed2, 3, 2).status == "fails"
    red3, rep3, delta3 = _rep("3_1", 5)
    ch3 = cover_homology(red3, kernel_table(rep3), "kernel")
    closed3 = cyclic_cover_invariants(delta3, rep3.order_alpha)
    assert torsion_ratio_check(ch3, closed3, 5, 2).status == "both_torsion_free"


def test_meridian_cycle_structure():
    red, rep, _ = _rep("5_2", 3)
    tab = kernel_table(rep)   # the constructor asserts p^d cycles of length n
    assert tab.degree == rep.image_order
