from itertools import product

import pytest
from hypothesis import given

from strategies import deep_param
from uwk.extgraph import graph_distance
from uwk.lattice import DoubleWeylElement, UnitaryCharacter, WeylElement, base_change
from uwk.shapes import (
    C11,
    C22,
    ZERO,
    component_match,
    intersection,
    intersection_profile,
    label_slot,
    shape_of,
    unique_diff_embedding,
)
from uwk.suites import check_component_matching
from uwk.types import (
    T01,
    T10,
    WT10,
    AdmissibleWord,
    DoubleTypePresentation,
    admissible_symmetric,
    jh_of_type,
    jh_of_word,
    type_for_shape,
)
from uwk.weights import PreconditionError, TameParam, predicted_weights

U = lambda *xs: UnitaryCharacter(tuple(xs))  # noqa: E731
P7 = TameParam(WeylElement((False,)), U((2, 0)), 7, 1)
SYM = AdmissibleWord.symmetric


def test_shape_of_examples():
    for w in admissible_symmetric(1):
        assert shape_of(P7, type_for_shape(P7, w)) == w
    far = DoubleTypePresentation(DoubleWeylElement((False, False)), base_change(U((5, 3))), 7)
    assert not set(predicted_weights(P7)) & set(jh_of_type(far))
    assert shape_of(P7, far) is None


def test_exactly_three_shaped_types_at_f1():
    types = {type_for_shape(P7, w) for w in admissible_symmetric(1)}
    assert len(types) == 3
    assert {shape_of(P7, t) for t in types} == set(admissible_symmetric(1))


def test_intersection_profile_examples():
    assert intersection_profile(SYM((T10,))) == [1]
    assert intersection_profile(SYM((WT10,))) == [2]
    assert intersection_profile(SYM((T01,))) == [1]
    assert intersection_profile(SYM((WT10, T10, T01))) == [1, 1, 2]


def test_component_match_examples():
    w = SYM((WT10,))
    inter = intersection(P7, w)
    assert component_match(P7, w, inter[(0,)]).values == (C22,)
    assert component_match(P7, w, inter[(1,)]).values == (C11,)
    assert component_match(P7, type_for_shape(P7, w), inter[(1,)]).by_slot() == {1: C11}
    w10 = SYM((T10,))
    (sigma,) = intersection(P7, w10).values()
    assert component_match(P7, w10, sigma).values == (ZERO,)
    (outside,) = set(predicted_weights(P7)) - {sigma}
    with pytest.raises(PreconditionError):
        component_match(P7, w10, outside)


def test_unique_diff_embedding_examples():
    w = SYM((WT10,))
    inter = intersection(P7, w)
    assert unique_diff_embedding(P7, w, inter[(0,)], inter[(1,)]) == 0
    p2 = TameParam(WeylElement((False, False)), U((3, 0), (4, 1)), 11, 2)
    w2 = SYM((WT10, WT10))
    inter2 = intersection(p2, w2)
    assert unique_diff_embedding(p2, w2, inter2[(0, 0)], inter2[(1, 0)]) == 0
    assert unique_diff_embedding(p2, w2, inter2[(0, 0)], inter2[(0, 1)]) == 1
    with pytest.raises(PreconditionError):
        unique_diff_embedding(p2, w2, inter2[(0, 0)], inter2[(1, 1)])


def test_label_slot():
    assert [label_slot(3, j) for j in range(3)] == [5, 4, 3]


# -- properties --------------------------------------------------------------


@given(deep_param(deep=2, primes=(7, 11, 13)))
def test_intersection_size_is_profile_product(param):
    p, f, s, mu = param
    tp = TameParam(s, mu, p, f)
    predicted = set(predicted_weights(tp))
    for w in admissible_symmetric(f):
        size = len(predicted & set(jh_of_word(tp, w)))
        prod = 1
        for k in intersection_profile(w):
            prod *= k
        assert size == prod


@given(deep_param(deep=2, primes=(7, 11, 13)))
def test_component_labels_injective_and_local(param):
    p, f, s, mu = param
    tp = TameParam(s, mu, p, f)
    for w in admissible_symmetric(f):
        inter = intersection(tp, w)
        labels = {om: component_match(tp, w, sigma).values for om, sigma in inter.items()}
        assert len(set(labels.values())) == len(labels)
        for a, b in product(inter, repeat=2):
            if graph_distance(a, b) == 1:
                diff = [j for j in range(f) if labels[a][j] != labels[b][j]]
                assert diff == [j for j in range(f) if a[j] != b[j]]


@pytest.mark.parametrize("f", [1, 2, 3])
def test_component_matching_all_shapes(f):
    report = check_component_matching(11, f)
    assert report.passed, report.detail
