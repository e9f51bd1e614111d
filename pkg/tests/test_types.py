import random
import warnings
from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles as O
from strategies import deep_param
from uwk.lattice import (
    DoubleCharacter,
    DoubleWeylElement,
    UnitaryCharacter,
    WeylElement,
    base_change,
    eta_prime,
)
from uwk.lifts import type_exponents
from uwk.suites import check_jh_determines_type
from uwk.types import (
    T01,
    T10,
    WT10,
    AdmissibleWord,
    DoubleTypePresentation,
    GenericityWarning,
    admissible_symmetric,
    all_words,
    dual,
    equivalent,
    frobenius_twist,
    incidence,
    is_conjugate_self_dual,
    jh_of_type,
    jh_of_word,
    presentation_genericity,
    star,
    theta,
    type_for_shape,
    types_containing_weight,
    unstar,
    x_sigma,
)
from uwk.weights import TameParam, canonicalize, predicted_weights

U = lambda *xs: UnitaryCharacter(tuple(xs))  # noqa: E731
D = lambda *xs: DoubleCharacter(tuple(xs))  # noqa: E731
ID2 = DoubleWeylElement((False, False))
P7 = TameParam(WeylElement((False,)), U((2, 0)), 7, 1)


def T(s, mu, p=7):
    return DoubleTypePresentation(DoubleWeylElement(tuple(s)), D(*mu), p)


def oracle_form(t):
    return (tuple(t.s.bits), [tuple(x) for x in t.mu])


@st.composite
def presentations(draw, p=7, f=1, lo=-6, hi=6):
    bits = draw(st.lists(st.booleans(), min_size=2 * f, max_size=2 * f))
    mu = draw(st.lists(st.tuples(st.integers(lo, hi), st.integers(lo, hi)), min_size=2 * f, max_size=2 * f))
    return T(bits, mu, p)


def test_equivalent_examples():
    t = T((False, False), [(3, 0), (1, -2)])
    assert equivalent(t, t)
    assert equivalent(dual(dual(t)), t)
    # BC(mu) + eta' differs from BC(mu + rho) by an X^0 twist, which breaks strict self-duality
    assert not is_conjugate_self_dual(t)
    assert type_exponents(dual(t)) != type_exponents(frobenius_twist(t))
    u = T((False, False), [(3, 0), (0, -3)])
    assert is_conjugate_self_dual(u)
    assert type_exponents(dual(u)) == type_exponents(frobenius_twist(u))


def test_dual_and_twist_examples():
    t = T((False, True), [(2, 0), (0, -2)])
    assert dual(t).mu == D((0, -2), (2, 0))
    tw = frobenius_twist(t)
    assert tw.s.bits == (True, False) and tw.mu == D((0, -2), (2, 0))
    assert frobenius_twist(tw) == t


def test_self_duality_examples():
    for s in WeylElement.all(2):
        mu = U((3, 1), (2, 0))
        assert is_conjugate_self_dual(DoubleTypePresentation(DoubleWeylElement.diagonal(s), base_change(mu), 7))
    for w in admissible_symmetric(1):
        assert is_conjugate_self_dual(type_for_shape(P7, w))
    assert not is_conjugate_self_dual(type_for_shape(P7, AdmissibleWord((T10, T01))))


def test_star_examples():
    assert star(AdmissibleWord((T10, T10))) == [((1, 0), False), ((1, 0), False)]
    assert star(AdmissibleWord((WT10, T01))) == [((0, 1), False), ((1, 0), True)]
    for w in admissible_symmetric(2):
        s = star(w)
        assert s[2:] == s[:2]


def test_type_for_shape_examples():
    f = 1
    t01 = type_for_shape(P7, AdmissibleWord.symmetric((T01,)))
    assert t01.s == ID2
    assert t01.mu == base_change(U((2, 0))) + eta_prime(f) - D((0, 1), (0, 1))
    t10 = type_for_shape(P7, AdmissibleWord.symmetric((T10,)))
    assert t10 == DoubleTypePresentation(ID2, base_change(U((2, 0))), 7)


def test_type_for_shape_matches_jh_example():
    t = type_for_shape(P7, AdmissibleWord.symmetric((T01,)))
    expected = {canonicalize(U((6, 4)), 7), canonicalize(U((11, 7)), 7)}
    assert set(jh_of_type(t)) == expected


def test_admissible_counts():
    assert len(admissible_symmetric(1)) == 3
    assert len(admissible_symmetric(2)) == 9
    assert len(all_words(2)) == 81


def test_theta_example():
    th = theta(P7)
    assert th[canonicalize(U((6, 4)), 7)] == (T10,)
    assert th[canonicalize(U((2, 0)), 7)] == (T01,)
    assert th.to_json() == {"F((2,0))": "t01", "F((6,4))": "t10"}


def test_x_sigma_example():
    sigma = canonicalize(U((2, 0)), 7)
    assert set(x_sigma(P7, sigma)) == {AdmissibleWord.symmetric((T10,)), AdmissibleWord.symmetric((WT10,))}


def test_types_containing_weight_example():
    sigma = canonicalize(U((3, 0)), 7)
    ts = types_containing_weight(sigma)
    assert len(ts) == 2
    jhs = [set(jh_of_type(t)) for t in ts]
    assert all(sigma in j for j in jhs)
    assert jhs[0] != jhs[1]


def test_genericity_warning():
    t = T((False, False), [(1, 0), (1, 0)])
    assert presentation_genericity(t) < 1
    with pytest.warns(GenericityWarning):
        equivalent(t, t)
    generic = T((False, False), [(4, 0), (1, -2)])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        equivalent(generic, generic)


# -- properties --------------------------------------------------------------


@given(presentations(), presentations())
def test_equivalent_matches_law_oracle(t1, t2):
    assert equivalent(t1, t2, warn=False) == O.law_oracle(oracle_form(t1), oracle_form(t2), 7, bound=3)


@given(presentations(), st.lists(st.booleans(), min_size=2, max_size=2),
       st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=2))
def test_law_images_are_equivalent(t, s_bits, nu):
    s = DoubleWeylElement(tuple(s_bits))
    new_w = s * t.s * s.frobenius("forward").inverse()
    swapped = lambda bits, xs: [(b, a) if flag else (a, b) for (a, b), flag in zip(xs, bits)]  # noqa: E731
    smu, wnu = swapped(s.bits, t.mu), swapped(new_w.bits, nu)
    nu_inv = nu[1:] + nu[:1]
    mu2 = [(a + 7 * c - e, b + 7 * d - g) for (a, b), (c, d), (e, g) in zip(smu, nu_inv, wnu)]
    t2 = DoubleTypePresentation(new_w, D(*mu2), 7)
    assert equivalent(t, t2, warn=False)
    assert equivalent(t2, t, warn=False)


@given(presentations(f=2, lo=-3, hi=3), presentations(f=2, lo=-3, hi=3), presentations(f=2, lo=-3, hi=3))
def test_equivalence_is_transitive_on_samples(a, b, c):
    if equivalent(a, b, warn=False) and equivalent(b, c, warn=False):
        assert equivalent(a, c, warn=False)


@given(presentations(f=2))
def test_dual_twist_commute(t):
    assert dual(frobenius_twist(t)) == frobenius_twist(dual(t))
    assert frobenius_twist(frobenius_twist(t)) == t


@given(st.lists(st.sampled_from([T10, WT10, T01]), min_size=2, max_size=6).filter(lambda x: len(x) % 2 == 0))
def test_star_roundtrip(letters):
    w = AdmissibleWord(tuple(letters))
    assert unstar(star(w)) == w


@pytest.mark.parametrize("f", [1, 2])
def test_symmetry_criterion_exhaustive(f):
    rng = random.Random(f)
    for s in WeylElement.all(f):
        mu = U(*[(b + rng.randint(2, 4), b) for b in (rng.randint(-7, 7) for _ in range(f))])
        param = TameParam(s, mu, 7, f)
        for w in all_words(f):
            assert is_conjugate_self_dual(type_for_shape(param, w), warn=False) == w.is_symmetric(), str(w)


@given(deep_param(deep=4, primes=(11, 13)))
def test_theta_incidence_law(param):
    p, f, s, mu = param
    tp = TameParam(s, mu, p, f)
    th = theta(tp)
    assert set(th.table) == set(predicted_weights(tp))
    assert len(set(th.table.values())) == 2 ** f
    for sigma, word in th.items():
        assert set(word) <= {T10, T01}
        assert len(x_sigma(tp, sigma)) == 2 ** f
        for w in admissible_symmetric(f):
            assert (sigma in set(jh_of_word(tp, w))) == incidence(w.letters[:f], word)


@given(deep_param(deep=2, primes=(7, 11), fs=(1, 2)))
def test_types_containing_weight_property(param):
    p, f, _, mu = param
    sigma = canonicalize(mu, p)
    ts = types_containing_weight(sigma)
    assert len(ts) == 2 ** f
    jhs = [frozenset(jh_of_type(t)) for t in ts]
    assert len(set(jhs)) == 2 ** f
    assert all(sigma in j for j in jhs)
    for i, j in product(range(len(ts)), repeat=2):
        if i != j:
            assert not equivalent(ts[i], ts[j])


def test_jh_sets_determine_types_exhaustive_f1():
    report = check_jh_determines_type(7, 1)
    assert report.passed, report.detail


def test_jh_sets_determine_types_sampled_f2():
    report = check_jh_determines_type(7, 2, pairs=200)
    assert report.passed, report.detail
