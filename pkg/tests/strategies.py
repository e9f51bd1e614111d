from hypothesis import strategies as st

from uwk.lattice import DoubleCharacter, DoubleWeylElement, UnitaryCharacter, WeylElement

PRIMES = [3, 5, 7, 11, 13]

pairs = st.tuples(st.integers(-30, 30), st.integers(-30, 30))


def unitary(f):
    return st.lists(pairs, min_size=f, max_size=f).map(lambda xs: UnitaryCharacter(tuple(xs)))


def double(f):
    return st.lists(pairs, min_size=2 * f, max_size=2 * f).map(lambda xs: DoubleCharacter(tuple(xs)))


def weyl(f):
    return st.lists(st.booleans(), min_size=f, max_size=f).map(lambda bs: WeylElement(tuple(bs)))


def double_weyl(f):
    return st.lists(st.booleans(), min_size=2 * f, max_size=2 * f).map(lambda bs: DoubleWeylElement(tuple(bs)))


@st.composite
def deep_param(draw, deep=1, primes=(7, 11, 13), fs=(1, 2, 3)):
    """(p, f, s, mu) with mu at least ``deep``-deep."""
    p = draw(st.sampled_from([q for q in primes if q - 2 - 2 * deep >= 0]))
    f = draw(st.sampled_from(fs))
    out = []
    for _ in range(f):
        b = draw(st.integers(-p, p))
        out.append((b + draw(st.integers(deep, p - 2 - deep)), b))
    s = draw(weyl(f))
    return p, f, s, UnitaryCharacter(tuple(out))
