"""Word algebra and Tietze moves."""

import pytest

from knotcover.presentations import (GroupPresentation, cyclic_reduce,
                                     drop_redundant_relator, free_reduce,
                                     is_conjugation_relator,
                                     reduce_presentation, simplify,
                                     substitute, word_image, word_inverse)


def test_word_basics():
    assert word_inverse((1, -2, 3)) == (-3, 2, -1)
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((1, 2, 3, -2, -1)) == (3,)
    assert substitute((1, 2, -1), 2, (3, 3)) == (1, 3, 3, -1)
    assert substitute((2, -2), 2, (1, 3)) == ()


def test_conjugation_relator_detection():
    # x2 = x1 x3 x1^-1 written as x1 x3 x1^-1 x2^-1
    hit = is_conjugation_relator((1, 3, -1, -2))
    assert hit == (2, (1, 3, -1))
    # rotated and inverted forms
    hit = is_conjugation_relator((-1, -3, 1, 2)[::-1])
    assert hit is not None
    assert is_conjugation_relator((1, 2, -1, -2)) is None   # commutator
    assert is_conjugation_relator((1, 2, 3)) is None


def test_validation():
    with pytest.raises(ValueError):
        GroupPresentation(2, ((3,),))
    with pytest.raises(ValueError):
        GroupPresentation(2, (), meridian_index=5)


def test_abelianization_degrees():
    # fibered-style presentation: t of degree 1, commutator generators of 0
    pres = GroupPresentation(3, ((1, 2, -1, -2, -3, -2), (1, 3, -1, -2, -3)))
    assert pres.abelianization_degrees() == [1, 0, 0]
    with pytest.raises(ValueError):
        GroupPresentation(2, ((1, 1),)).abelianization_degrees()  # H1 = Z + Z/2


def test_drop_redundant_relator():
    pres = GroupPresentation(2, ((1, 2, -1, -2), (2, 1, -2, -1)))
    assert len(drop_redundant_relator(pres).relators) == 1
    with pytest.raises(ValueError):
        drop_redundant_relator(GroupPresentation(1, ()))


def test_word_image_through_reduction():
    from knotcover.diagrams import builtin_knot, wirtinger
    pres = wirtinger(builtin_knot("5_2"))
    red, images = reduce_presentation(pres)
    # each original generator is a meridian conjugate: degree 1 in the
    # reduced presentation
    degs = red.abelianization_degrees()
    for i in range(pres.num_generators):
        w = word_image(images, (i + 1,))
        assert sum((1 if g > 0 else -1) * degs[abs(g) - 1] for g in w) == 1


def test_reduce_keeps_meridian_and_longitude():
    from knotcover.diagrams import builtin_knot, wirtinger
    pres = wirtinger(builtin_knot("6_2"))
    red, _ = reduce_presentation(drop_redundant_relator(pres))
    assert red.longitude is not None
    assert red.word_degree(red.longitude) == 0
    assert 1 <= red.meridian_index <= red.num_generators
    assert abs(red.abelianization_degrees()[red.meridian_index - 1]) == 1
