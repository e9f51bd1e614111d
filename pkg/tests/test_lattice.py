import pytest
from hypothesis import given, strategies as st

import oracles as O
from strategies import PRIMES, double, pairs, unitary, weyl
from uwk.lattice import (
    DoubleCharacter,
    DoubleWeylElement,
    LatticeError,
    Params,
    UnitaryCharacter,
    WeylElement,
    base_change,
    coroot_pairing,
    depth,
    eta_prime,
    frobenius,
    frobenius_power,
    in_sublattice,
    lattice_index,
    weyl_act,
)

U = lambda *xs: UnitaryCharacter(tuple(xs))  # noqa: E731


def test_params_validation():
    Params(7, 2)
    for p, f in [(2, 1), (9, 1), (7, 0), (1, 1)]:
        with pytest.raises(LatticeError):
            Params(p, f)


def test_coroot_pairing_examples():
    assert coroot_pairing(U((2, 0)), 0) == 2
    assert coroot_pairing(U((1, 1)), 0) == 0
    assert coroot_pairing(eta_prime(1), 1) == 1
    with pytest.raises(LatticeError):
        coroot_pairing(U((2, 0)), 1)


def test_frobenius_examples():
    assert frobenius(U((2, 0))) == U((0, -2))
    assert frobenius(U((1, 0), (3, 1))) == U((-1, -3), (1, 0))
    d = DoubleCharacter(((1, 0), (2, 0), (3, 0), (4, 0)))
    assert frobenius(d) == DoubleCharacter(((4, 0), (1, 0), (2, 0), (3, 0)))


def test_weyl_act_examples():
    assert weyl_act(WeylElement((True,)), U((2, 0))) == U((0, 2))
    assert weyl_act(WeylElement((False,)), U((2, 0))) == U((2, 0))
    with pytest.raises(LatticeError):
        weyl_act(WeylElement((True, False)), U((2, 0)))


def test_base_change_examples():
    assert base_change(U((2, 0))) == DoubleCharacter(((2, 0), (0, -2)))
    assert base_change(U((0, 0))) == DoubleCharacter(((0, 0), (0, 0)))


def test_depth_examples():
    assert depth(U((2, 0)), 7) == 2
    assert depth(U((0, 0)), 7) == 0
    assert depth(U((6, 0)), 7) == -1


def test_in_sublattice_examples():
    assert in_sublattice(U((8, 8)), "pMinusPiX0", 7)
    assert in_sublattice(U((1, -1)), "rootLattice")
    assert not in_sublattice(U((4, 4)), "pMinusPiX0", 7)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("f", [1, 2, 3])
def test_lattice_index_matches_oracle(p, f):
    assert lattice_index(p, f) == O.index_oracle(p, f) == p ** f + 1


# -- properties --------------------------------------------------------------


@given(st.integers(1, 4).flatmap(unitary))
def test_frobenius_matches_oracle(mu):
    assert list(frobenius(mu)) == O.frob(list(mu))
    assert frobenius(frobenius(mu), "inverse") == mu


@given(st.integers(1, 4).flatmap(unitary))
def test_frobenius_order_and_minus_w(mu):
    f = len(mu)
    assert frobenius_power(mu, 2 * f) == mu
    assert frobenius_power(mu, f) == -weyl_act(WeylElement((True,) * f), mu)


@given(st.integers(1, 4).flatmap(double))
def test_double_frobenius_order(mu):
    assert frobenius_power(mu, len(mu)) == mu


@given(st.integers(1, 3).flatmap(lambda f: st.tuples(weyl(f), unitary(f))))
def test_weyl_involution_and_base_change_commute(data):
    w, mu = data
    assert weyl_act(w, weyl_act(w, mu)) == mu
    assert base_change(weyl_act(w, mu)) == weyl_act(DoubleWeylElement.diagonal(w), base_change(mu))


@given(st.integers(1, 3).flatmap(unitary))
def test_base_change_is_fixed_by_minus_w_pi_f(mu):
    f = len(mu)
    b = base_change(mu)
    assert -weyl_act(DoubleWeylElement((True,) * 2 * f), frobenius_power(b, f)) == b
    for j in range(f):
        assert coroot_pairing(b, j) == coroot_pairing(b, j + f)


@given(st.sampled_from(PRIMES), st.integers(1, 3).flatmap(unitary))
def test_depth_matches_oracle(p, mu):
    assert depth(mu, p) == O.depth_oracle(list(mu), p)


@given(st.sampled_from(PRIMES), st.lists(st.integers(-40, 40), min_size=1, max_size=3), st.data())
def test_sublattice_membership_matches_oracle(p, cs, data):
    diag = UnitaryCharacter(tuple((c, c) for c in cs))
    assert in_sublattice(diag, "pMinusPiX0", p) == O.in_p_minus_pi_x0(list(diag), p)
    off = data.draw(unitary(len(cs)))
    assert in_sublattice(off, "pMinusPiX0", p) == O.in_p_minus_pi_x0(list(off), p)
    assert in_sublattice(off, "rootLattice") == O.in_root_lattice(list(off))


@given(st.sampled_from(PRIMES), st.lists(st.integers(-20, 20), min_size=1, max_size=3))
def test_p_minus_pi_image_is_in_sublattice(p, cs):
    c = UnitaryCharacter(tuple((x, x) for x in cs))
    image = c.scale(p) - frobenius(c)
    assert in_sublattice(image, "pMinusPiX0", p)
