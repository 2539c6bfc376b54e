"""Character-variety betti computation against the integer pipeline."""

from fractions import Fraction

from knotcover.algebra.cyclotomic import CyclotomicField
from knotcover.covers import cover_homology, kernel_table
from knotcover.diagrams import builtin_knot, knot_metadata, wirtinger
from knotcover.fox import alexander_mod_p, alexander_poly
from knotcover.presentations import GroupPresentation, drop_redundant_relator, reduce_presentation
from knotcover.reps import build_rep, roots_of_delta_modp
from knotcover.strat import (character_matrix, deck_map, fibered_bound_check,
                             stratification_betti,
                             _nonzero_characters_up_to_scaling)


def _setup(name, p, which=0):
    pres = wirtinger(builtin_knot(name))
    red, _ = reduce_presentation(drop_redundant_relator(pres))
    delta = alexander_poly(pres)
    roots = roots_of_delta_modp(alexander_mod_p(delta, p), p)
    rep = build_rep(red, p, list(roots[which].factor))
    return red, rep, delta


def test_character_class_count():
    assert len(_nonzero_characters_up_to_scaling(11, 1)) == 1
    assert len(_nonzero_characters_up_to_scaling(5, 2)) == 6
    assert len(_nonzero_characters_up_to_scaling(2, 4)) == 15


def test_deck_map_hits_whole_group():
    red, rep, _ = _setup("4_1", 11)
    sub, data, images = deck_map(red, rep)   # surjectivity asserted inside
    assert sub.num_generators == rep.order_alpha * (red.num_generators - 1) + 1
    # the meridian power closing the cyclic cover maps to zero
    tn = data.rewrite((red.meridian_index,) * rep.order_alpha)
    total = rep.field.zero()
    for g in tn:
        total = rep.field.add(total, images[abs(g) - 1]) if g > 0 else \
            rep.field.sub(total, images[abs(g) - 1])
    assert rep.field.is_zero(total)


def test_character_matrix_commutator_oracle():
    """Hand-computed row: for the relator a b a^-1 b^-1 with q(a) = e1,
    q(b) = 0, the evaluated derivative row is (1 - f(b), f(a) - 1) =
    (0, zeta - 1)."""
    C = CyclotomicField(5)
    sub = GroupPresentation(2, ((1, 2, -1, -2),))
    images = [(1,), (0,)]
    rows = character_matrix(sub, images, (1,), 5, C)
    zero = C.zero()
    zeta_minus_1 = C.sub(C.zeta_power(1), C.one())
    assert rows[0][0] == zero
    assert rows[0][1] == zeta_minus_1
    # with both images trivial the row dies entirely
    rows0 = character_matrix(sub, [(0,), (0,)], (1,), 5, C)
    assert rows0[0] == [zero, zero]


def test_betti_matches_table_values():
    expect = {("4_1", 11): 11, ("3_1", 3): 3, ("3_1", 5): 27, ("6_1", 3): 3}
    for (name, p), want in expect.items():
        red, rep, delta = _setup(name, p)
        res = stratification_betti(red, rep, delta=delta)
        assert res.betti == want, (name, p, res)


def test_cross_pipeline_agreement():
    for name, p in [("3_1", 2), ("4_1", 3), ("5_2", 3), ("6_1", 5), ("5_1", 2)]:
        red, rep, delta = _setup(name, p)
        res = stratification_betti(red, rep, delta=delta)
        ch = cover_homology(red, kernel_table(rep), "kernel", peripheral=False)
        assert res.betti == ch.betti, (name, p, res.betti, ch.betti)


def test_galois_scaling_consistency():
    """Scalar multiples of a character give Galois-conjugate matrices, hence
    equal coranks: computing one representative per class and scaling by
    p - 1 equals the full character sum."""
    red, rep, delta = _setup("3_1", 5)
    C = CyclotomicField(5)
    sub, data, images = deck_map(red, rep)
    r = sub.num_generators
    full = 0
    for chi in _all_nonzero(5, 2):
        rank = C.rank(character_matrix(sub, images, chi, 5, C))
        full += max(0, (r - 1) - rank)
    res = stratification_betti(red, rep, delta=delta)
    assert full == sum((5 - 1) * c for c in res.contributions) / (5 - 1) * (5 - 1)
    assert res.betti == full + res.betti_cyclic


def _all_nonzero(p, d):
    out = []
    for n in range(1, p ** d):
        v = []
        m = n
        for _ in range(d):
            v.append(m % p)
            m //= p
        out.append(tuple(v))
    return out


def test_fibered_checks():
    red, rep, delta = _setup("4_1", 2)
    meta = knot_metadata("4_1")
    v = fibered_bound_check(red, rep, meta["fibered"], meta["genus"], delta=delta)
    assert v.applicable and v.ok
    assert v.betti == v.upper_bound == 4    # genus 1: the bound pins betti
    red2, rep2, delta2 = _setup("5_2", 3)
    v2 = fibered_bound_check(red2, rep2, knot_metadata("5_2")["fibered"],
                             knot_metadata("5_2")["genus"], delta=delta2)
    assert not v2.applicable and v2.ok
