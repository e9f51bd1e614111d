"""Brute-force oracle values, frozen.

The oracles in ``oracles.py`` share no code with the package.  These tests pin
their outputs so that a change in either the oracle or the library shows up as
a disagreement with a fixed number rather than with a moving target.
"""

import pytest

import oracles as O


def test_depth_oracle_frozen():
    assert [O.depth_oracle([x], 7) for x in [(2, 0), (0, 0), (6, 0)]] == [2, 0, -1]


def test_frobenius_oracle_frozen():
    assert O.frob([(2, 0)]) == [(0, -2)]
    assert O.frob([(1, 0), (3, 1)]) == [(-1, -3), (1, 0)]
    assert O.frob_inv(O.frob([(1, 0), (3, 1)])) == [(1, 0), (3, 1)]


@pytest.mark.parametrize("p,f,index", [
    (3, 1, 4), (3, 2, 10), (3, 3, 28), (7, 1, 8), (7, 2, 50), (7, 3, 344),
    (13, 1, 14), (13, 2, 170), (13, 3, 2198),
])
def test_index_oracle_frozen(p, f, index):
    assert O.index_oracle(p, f) == index


def test_sublattice_oracle_frozen():
    assert O.in_p_minus_pi_x0([(8, 8)], 7)
    assert not O.in_p_minus_pi_x0([(4, 4)], 7)
    assert O.in_root_lattice([(1, -1)])
    assert O.same_class([(-1, -5)], [(7, 3)], 7)
    assert O.same_class([(2, 0)], [(10, 8)], 7)


def test_alcove_search_frozen():
    assert O.alcove_element(0, 7) == [(1, (0, 0))]
    assert O.alcove_element(1, 7) == [(-1, (1, 0))]
    assert O.alcove_element(-1, 7) == [(-1, (0, -1))]


def test_t_map_oracle_frozen():
    table = {w: O.t_map_oracle([(2, 0)], (w,), 7)[0] for w in (-2, -1, 0, 1, 2, 3)}
    assert table == {-2: (-7, -7), -1: (-1, -5), 0: (2, 0), 1: (6, 4), 2: (11, 7), 3: (13, 13)}


def test_predicted_oracle_frozen():
    assert O.predicted_oracle([(2, 0)], (False,), 7) == [[(2, 0)], [(6, 4)]]
    assert O.predicted_oracle([(2, 0)], (True,), 7) == [[(2, 0)], [(-1, -5)]]
    assert O.predicted_oracle([(2, 0), (3, 1)], (True, False), 7) == [
        [(2, 0), (3, 1)], [(-1, -4), (4, 1)], [(1, 0), (0, -3)], [(-1, -5), (0, -2)]]


def test_jh_oracle_frozen():
    assert O.jh_oracle([(2, 0)], (False,), (False,), [(1, 0)], 7) == [[(-1, -5)], [(2, 0)]]
    assert O.jh_oracle([(2, 0)], (False,), (False,), [(0, 1)], 7) == [[(6, 4)], [(11, 7)]]


def test_law_oracle_frozen():
    t = ((False, False), [(3, 0), (1, -2)])
    assert O.law_oracle(t, t, 7)
    assert not O.law_oracle(t, ((False, False), [(4, 0), (1, -2)]), 7)


def test_group_count_oracle_frozen():
    assert O.unitary_counts(3) == (96, 192, 4)
    assert O.gl2_count(3) == 48


def test_group_count_oracle_frozen_p5():
    assert O.unitary_counts(5) == (720, 2880, 6)
    assert O.gl2_count(5) == 480


def test_symbolic_oracles_frozen():
    import sympy

    expected = sympy.sympify("-dstar12j**7*dstar12jf*dstar21j**7*dstar21jf")
    assert sympy.expand(O.jacobian_oracle(False) - expected) == 0
    assert sympy.expand(O.jacobian_oracle(True) - expected) == 0
    assert O.polarization_oracle()
