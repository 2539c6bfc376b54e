"""PD parsing, the built-in table, and Wirtinger structure."""

import json

import pytest

from knotcover.algebra.polyz import Laurent
from knotcover.diagrams import (DiagramError, builtin_knot, knot_metadata,
                                knot_names, longitude_word, parse_pd,
                                validate_diagram, wirtinger)
from knotcover.fox import alexander_poly
from knotcover.presentations import reduce_presentation, simplify

TREFOIL_PD = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]"


def test_parse_pd_trefoil():
    d = parse_pd(TREFOIL_PD)
    assert d.crossing_count == 3 and d.edge_count == 6
    labels = [x for c in d.crossings for x in c]
    assert all(labels.count(v) == 2 for v in range(1, 7))


def test_parse_pd_json_form():
    d = parse_pd(json.dumps([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]))
    assert d.crossing_count == 3


def test_parse_pd_rejects_empty():
    with pytest.raises(DiagramError, match="empty"):
        parse_pd("")
    with pytest.raises(DiagramError):
        validate_diagram([])


def test_parse_pd_rejects_two_component_link():
    # the (2,4) torus link: under-strand edges are not consecutive
    with pytest.raises(DiagramError, match="not a single-component"):
        parse_pd("PD[X(4,1,3,2), X(2,3,1,4)]")


def test_parse_pd_rejects_bad_multiplicity():
    with pytest.raises(DiagramError):
        parse_pd("PD[X(1,2,2,1), X(3,4,4,5)]")
    with pytest.raises(DiagramError):
        parse_pd("PD[X(1,1,2,2), X(1,1,2,2)]")


def test_builtin_table_contents():
    names = knot_names()
    assert "3_1" in names and "7_7" in names and "unknot" in names
    d = builtin_knot("4_1")
    assert d.crossing_count == 4
    assert builtin_knot("3_1").crossing_count == 3
    with pytest.raises(KeyError, match="9_99"):
        builtin_knot("9_99")


def test_wirtinger_shape_and_abelianization():
    for name in knot_names():
        d = builtin_knot(name)
        pres = wirtinger(d)
        if name == "unknot":
            assert pres.num_generators == 1 and not pres.relators
            continue
        assert pres.num_generators == d.crossing_count
        assert len(pres.relators) == d.crossing_count
        assert all(len(r) == 4 for r in pres.relators)
        assert str(pres.abelianization()) == "[0]"
        assert pres.abelianization_degrees() == [1] * pres.num_generators


def test_wirtinger_conjugation_shape():
    pres = wirtinger(parse_pd(TREFOIL_PD))
    for r in pres.relators:
        # x_a x_b x_c^-1 x_b^-1 up to rotation: the over generator appears
        # with both signs
        signs = {}
        for g in r:
            signs.setdefault(abs(g), []).append(g > 0)
        over = [g for g, s in signs.items() if len(s) == 2]
        assert len(over) == 1 and set(signs[over[0]]) == {True, False}


def test_unknot_kink():
    d = builtin_knot("unknot")
    pres = wirtinger(d)
    assert str(pres.abelianization()) == "[0]"
    assert alexander_poly(pres) == Laurent.one()
    assert pres.word_degree(pres.longitude) == 0


def test_longitude_abelianizes_to_zero_everywhere():
    for name in knot_names():
        pres = wirtinger(builtin_knot(name))
        assert pres.word_degree(pres.longitude) == 0, name


def test_simplify_single_step():
    pres = wirtinger(builtin_knot("3_1"))
    s = simplify(pres)
    assert s.num_generators == 2 and len(s.relators) == 2
    assert alexander_poly(s).equals_up_to_unit(alexander_poly(pres))
    f8 = wirtinger(builtin_knot("4_1"))
    s8 = simplify(f8)
    assert s8.num_generators == 3
    assert alexander_poly(s8).equals_up_to_unit(alexander_poly(f8))
    # fixpoint on an already-minimal two-generator presentation
    red, _ = reduce_presentation(pres)
    assert simplify(red) is red


def test_reduction_preserves_alexander_polynomial():
    for name in knot_names():
        if name == "unknot":
            continue
        pres = wirtinger(builtin_knot(name))
        red, images = reduce_presentation(pres)
        assert alexander_poly(red).equals_up_to_unit(alexander_poly(pres)), name
        assert str(red.abelianization()) == "[0]"


def test_metadata_fibered_means_monic():
    for name in knot_names():
        meta = knot_metadata(name)
        if name == "unknot":
            continue
        delta = alexander_poly(wirtinger(builtin_knot(name)))
        coeffs = delta.unit_normal().poly()
        if meta["fibered"]:
            assert abs(coeffs[-1]) == 1, name
            assert len(coeffs) - 1 == 2 * meta["genus"], name
        assert len(coeffs) - 1 <= 2 * meta["genus"], name
