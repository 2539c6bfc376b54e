"""Affine representation construction and verification."""

import pytest

from knotcover.diagrams import builtin_knot, wirtinger
from knotcover.fox import alexander_mod_p, alexander_poly
from knotcover.presentations import GroupPresentation, drop_redundant_relator, reduce_presentation
from knotcover.reps import (AffineRep, NoRepresentationError, build_rep,
                            conjugate_scaled_equivalent, roots_of_delta_modp,
                            verify_rep)

# fiber-bundle presentation of the figure-8 complement:
# t x t^-1 = xyx, t y t^-1 = yx
FIG8_FIBER = GroupPresentation(
    3, ((1, 2, -1, -2, -3, -2), (1, 3, -1, -2, -3)), meridian_index=1)


def _delta(name):
    return alexander_poly(wirtinger(builtin_knot(name)))


def test_roots_figure8_mod_11():
    roots = roots_of_delta_modp(alexander_mod_p(_delta("4_1"), 11), 11)
    assert [(list(r.factor), r.degree, r.order) for r in roots] == \
        [([2, 1], 1, 5), ([6, 1], 1, 5)]   # t-9 and t-5


def test_roots_trefoil_mod_3():
    roots = roots_of_delta_modp(alexander_mod_p(_delta("3_1"), 3), 3)
    assert [(list(r.factor), r.degree, r.order) for r in roots] == [([1, 1], 1, 2)]


def test_roots_refuse_trivial_reduction():
    with pytest.raises(NoRepresentationError):
        roots_of_delta_modp(alexander_mod_p(_delta("5_2"), 2), 2)
    with pytest.raises(NoRepresentationError):
        roots_of_delta_modp(alexander_mod_p(_delta("6_1"), 2), 2)


def test_worked_example_fiber_presentation():
    rep = build_rep(FIG8_FIBER, 11, [-5 % 11, 1])
    assert rep.image_order == 55
    assert rep.degrees == (1, 0, 0)
    # the published assignment t -> 5z, x -> z+1, y -> z+3
    assert conjugate_scaled_equivalent(rep, [(0,), (1,), (3,)])
    v = verify_rep(rep, closure_limit=200)
    assert v.ok and v.closure_order == 55


def test_wirtinger_figure8_rep_order_55():
    red, _ = reduce_presentation(drop_redundant_relator(wirtinger(builtin_knot("4_1"))))
    rep = build_rep(red, 11, [-5 % 11, 1])
    v = verify_rep(rep, closure_limit=200)
    assert v.ok and v.closure_order == 55
    assert v.longitude_trivial


def test_trefoil_rep_orders():
    red, _ = reduce_presentation(drop_redundant_relator(wirtinger(builtin_knot("3_1"))))
    r3 = build_rep(red, 3, [1, 1])
    assert r3.image_order == 6
    assert verify_rep(r3, closure_limit=50).closure_order == 6  # Aff(F_3)
    r2 = build_rep(red, 2, [1, 1, 1])
    assert r2.image_order == 12 and r2.d == 2 and r2.order_alpha == 3


def test_meridian_normalization_and_multiplier():
    red, _ = reduce_presentation(drop_redundant_relator(wirtinger(builtin_knot("5_2"))))
    rep = build_rep(red, 7, [1, 1])
    mer = rep.generator_map(rep.presentation.meridian_index)
    assert mer[0] == 1 % rep.order_alpha          # multiplier exactly alpha
    assert rep.field.is_zero(mer[1])              # translation normalized to 0


def test_gauge_invariance():
    """Conjugating every generator image by a fixed affine map yields a
    representation passing all checks."""
    red, _ = reduce_presentation(drop_redundant_relator(wirtinger(builtin_knot("4_1"))))
    rep = build_rep(red, 3, [1, 0, 1])
    F = rep.field
    c, b = F.elem([2, 1]), F.elem([1, 2])
    new_tr = []
    for i, u in enumerate(rep.translations):
        a_pow = F.pow(F.gen(), rep.degrees[i] % rep.order_alpha)
        # (c,b) (a,u) (c,b)^-1 sends u to c*u + (1-a) b
        new_tr.append(F.add(F.mul(c, u), F.mul(F.sub(F.one(), a_pow), b)))
    conj = AffineRep(red, F, rep.degrees, tuple(new_tr), rep.order_alpha)
    v = verify_rep(conj, closure_limit=500)
    assert v.relators_ok and v.span_full and v.nonabelian
    assert v.image_order == rep.image_order


def test_all_zero_translations_rejected_by_verifier():
    red, _ = reduce_presentation(drop_redundant_relator(wirtinger(builtin_knot("3_1"))))
    rep = build_rep(red, 3, [1, 1])
    degenerate = AffineRep(red, rep.field, rep.degrees,
                           tuple(rep.field.zero() for _ in rep.translations),
                           rep.order_alpha)
    v = verify_rep(degenerate)
    assert not v.ok and not v.translations_nonzero and not v.nonabelian


def test_every_corpus_rep_verifies():
    from knotcover.diagrams import knot_names
    for name in knot_names():
        if name == "unknot":
            continue
        pres = wirtinger(builtin_knot(name))
        red, _ = reduce_presentation(drop_redundant_relator(pres))
        delta = alexander_poly(pres)
        for p in (2, 3, 5):
            try:
                roots = roots_of_delta_modp(alexander_mod_p(delta, p), p)
            except NoRepresentationError:
                continue
            for root in roots:
                rep = build_rep(red, p, list(root.factor))
                v = verify_rep(rep)
                assert v.ok, (name, p, root, v)
                assert v.longitude_trivial, (name, p)


def test_rep_serialization():
    rep = build_rep(FIG8_FIBER, 11, [-5 % 11, 1])
    js = rep.to_json()
    assert js["p"] == 11 and js["image_order"] == 55
    assert js["modulus"] == [6, 1]
