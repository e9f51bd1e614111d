import random

import pytest
from hypothesis import given, strategies as st

import oracles as O
from strategies import deep_param
from uwk.extgraph import region_points
from uwk.lattice import DoubleCharacter, UnitaryCharacter, WeylElement, base_change, frobenius
from uwk.types import admissible_symmetric, jh_of_word
from uwk.weights import (
    DepthError,
    PreconditionError,
    TameParam,
    all_restricted_weights,
    bc_weight,
    canonicalize,
    epsilon_involution,
    ext1_dim,
    jh_factors,
    predicted_weights,
    predicted_weights_by_omega,
    weights_equal,
)

U = lambda *xs: UnitaryCharacter(tuple(xs))  # noqa: E731
ID1, W1 = WeylElement((False,)), WeylElement((True,))


def classes(chars, p):
    return {canonicalize(U(*c), p) for c in chars}


def test_canonicalize_examples():
    assert canonicalize(U((-1, -5)), 7).rep == U((7, 3))
    assert canonicalize(U((2, 0)), 7).rep == U((2, 0))
    assert weights_equal(U((2, 0)), U((10, 8)), 7)
    with pytest.raises(PreconditionError):
        canonicalize(U((9, 0)), 7)


def test_weight_json_and_side_mixing():
    F = canonicalize(U((2, 0)), 7)
    assert F.to_json() == {"side": "unitary", "rep": [[2, 0]]}
    with pytest.raises(TypeError):
        _ = F == bc_weight(F)


def test_predicted_weights_examples():
    mu = U((2, 0))
    assert set(predicted_weights(TameParam(ID1, mu, 7, 1))) == classes([[(2, 0)], [(6, 4)]], 7)
    assert set(predicted_weights(TameParam(W1, mu, 7, 1))) == classes([[(2, 0)], [(7, 3)]], 7)
    with pytest.raises(DepthError):
        predicted_weights(TameParam(ID1, U((6, 0)), 7, 1))
    ws = predicted_weights(TameParam(WeylElement((True, False)), U((2, 0), (3, 1)), 7, 2))
    assert len(ws) == 4


def test_jh_factors_examples():
    mu = U((2, 0))
    res = jh_factors(mu, ID1, ID1, U((1, 0)), 7)
    assert set(res.weights) == classes([[(7, 3)], [(2, 0)]], 7)
    res = jh_factors(mu, ID1, ID1, U((0, 1)), 7)
    assert set(res.weights) == classes([[(6, 4)], [(11, 7)]], 7)
    with pytest.raises(PreconditionError):
        jh_factors(mu, ID1, ID1, U((2, 0)), 7)


def test_epsilon_examples():
    F = canonicalize(U((2, 0)), 7)
    assert epsilon_involution(bc_weight(F)) == bc_weight(F)
    G = canonicalize(DoubleCharacter(((2, 0), (3, 0))), 7)
    assert epsilon_involution(G) != G
    assert epsilon_involution(epsilon_involution(G)) == G


def test_bc_weight_examples():
    F = canonicalize(U((2, 0)), 7)
    assert bc_weight(F) == canonicalize(DoubleCharacter(((2, 0), (0, -2))), 7)
    ws = all_restricted_weights(7, 1)
    assert len(ws) == 7 * 8
    images = [bc_weight(w) for w in ws]
    assert len(set(images)) == len(ws)
    assert all(epsilon_involution(x) == x for x in images)


def test_ext1_examples():
    mu = U((2, 0), (3, 1))
    assert ext1_dim(mu, (0, 0), (1, 0), 7) == 1
    assert ext1_dim(mu, (0, 0), (1, 1), 7) == 0
    assert ext1_dim(mu, (0, 0), (0, 0), 7) == 0


# -- properties --------------------------------------------------------------


@given(deep_param(deep=1, primes=(5, 7, 11)))
def test_predicted_weights_match_oracle(param):
    p, f, s, mu = param
    got = set(predicted_weights(TameParam(s, mu, p, f)))
    assert got == classes(O.predicted_oracle(list(mu), s.bits, p), p)
    assert len(got) == 2 ** f
    for F in got:
        assert all(0 <= n < p - 1 for n in F.rep.pairings())


@given(deep_param(deep=2, primes=(7, 11, 13), fs=(1, 2)), st.data())
def test_jh_factors_match_oracle(param, data):
    p, f, s, mu = param
    w = WeylElement(tuple(data.draw(st.lists(st.booleans(), min_size=f, max_size=f))))
    roots = data.draw(st.lists(st.integers(-1, 0), min_size=f, max_size=f))
    nu = U(*[(1 + r, -r) for r in roots])
    res = jh_factors(mu, s, w, nu, p)
    assert set(res.weights) == classes(O.jh_oracle(list(mu), s.bits, w.bits, list(nu), p), p)
    assert len(res.weights) == 2 ** f


@given(deep_param(deep=1), st.data())
def test_canonicalize_is_class_invariant(param, data):
    p, f, _, mu = param
    cs = data.draw(st.lists(st.integers(-3, 3), min_size=f, max_size=f))
    c = U(*[(x, x) for x in cs])
    shifted = mu + c.scale(p) - frobenius(c)
    assert canonicalize(shifted, p) == canonicalize(mu, p)
    assert bc_weight(canonicalize(mu, p)) == canonicalize(base_change(shifted), p)


@given(deep_param(deep=1, fs=(1, 2)), st.data())
def test_ext1_symmetric(param, data):
    p, f, _, mu = param
    pts = region_points(mu, p)
    a, b = data.draw(st.sampled_from(pts)), data.draw(st.sampled_from(pts))
    assert ext1_dim(mu, a, b, p) == ext1_dim(mu, b, a, p)


@given(st.sampled_from([5, 7, 11]), st.integers(1, 3), st.randoms(use_true_random=False))
def test_epsilon_involution_property(p, f, rng):
    pairs = tuple((b + rng.randrange(p), b) for b in (rng.randint(-5, 5) for _ in range(2 * f)))
    G = canonicalize(DoubleCharacter(pairs), p)
    assert epsilon_involution(epsilon_involution(G)) == G


@given(deep_param(deep=2, primes=(7, 11), fs=(1, 2)))
def test_each_predicted_weight_is_isolated_by_a_type(param):
    p, f, s, mu = param
    tp = TameParam(s, mu, p, f)
    predicted = set(predicted_weights(tp))
    meets = [predicted & set(jh_of_word(tp, w)) for w in admissible_symmetric(f)]
    for sigma in predicted:
        assert {sigma} in meets


def test_predicted_by_omega_keys():
    tp = TameParam(ID1, U((2, 0)), 7, 1)
    assert predicted_weights_by_omega(tp) == {(0,): canonicalize(U((2, 0)), 7),
                                              (1,): canonicalize(U((6, 4)), 7)}
