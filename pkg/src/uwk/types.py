"""Tame inertial type presentations and admissible words.

A type on the base-changed side is presented by a pair (w', mu') with
w' in W' and mu' in X*(T').  Two presentations are equivalent when one is
carried to the other by the change-of-presentation law

    w'  -> s w' pi'(s)^{-1},
    mu' -> s(mu') + p pi'^{-1}(nu) - s w' pi'(s)^{-1}(nu),

for some s in W' and nu in X*(T').  The law is affine-linear in nu, so
equivalence is decided by an exact rational solve for each of the 2^{2f}
choices of s.

The law can miss equivalences when some pairing of mu' is 0 or +-1 mod p
(for instance between presentations of a type with repeated characters), so
``equivalent`` warns there instead of guessing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from sympy import Matrix

from .lattice import (
    DoubleCharacter,
    DoubleWeylElement,
    LatticeError,
    UnitaryCharacter,
    WeylElement,
    base_change,
    depth,
    eta_prime,
    frobenius,
    rho,
    weyl_act,
)
from .weights import (
    DepthError,
    PreconditionError,
    SerreWeightClass,
    TameParam,
    canonicalize,
    jh_factors,
    jh_of_diagonal,
    predicted_weights_by_omega,
)

T10 = "T10"
WT10 = "WT10"
T01 = "T01"
LETTERS = (T10, WT10, T01)

# letter -> (translation nu'_j', whether the Weyl part is the swap)
_STAR = {
    T10: ((1, 0), False),
    WT10: ((1, 0), True),
    T01: ((0, 1), False),
}


class GenericityWarning(UserWarning):
    """The equivalence test was run below the range where it is known to be complete."""


@dataclass(frozen=True)
class DoubleTypePresentation:
    s: DoubleWeylElement
    mu: DoubleCharacter
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.s, DoubleWeylElement):
            object.__setattr__(self, "s", DoubleWeylElement(tuple(self.s.bits)))
        if len(self.s) != len(self.mu):
            raise LatticeError("Weyl part and character of a type must have equal length")

    @property
    def f(self) -> int:
        return len(self.mu) // 2

    def to_json(self) -> dict:
        return {"s": self.s.to_string(), "mu": [list(x) for x in self.mu], "p": self.p}

    def __str__(self) -> str:
        return f"tau'({self.s}, {self.mu})"


# ---------------------------------------------------------------------------
# equivalence


def _flat_frob_inverse_matrix(n: int) -> list[list[int]]:
    # pi'^{-1}(mu)_{j} = mu_{j+1}; on flat coordinates (2 per slot).
    size = 2 * n
    m = [[0] * size for _ in range(size)]
    for j in range(n):
        src = (j + 1) % n
        m[2 * j][2 * src] = 1
        m[2 * j + 1][2 * src + 1] = 1
    return m


def _flat_weyl_matrix(w: WeylElement) -> list[list[int]]:
    n = len(w)
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for j, bit in enumerate(w.bits):
        if bit:
            m[2 * j][2 * j + 1] = m[2 * j + 1][2 * j] = 1
        else:
            m[2 * j][2 * j] = m[2 * j + 1][2 * j + 1] = 1
    return m


@lru_cache(maxsize=None)
def _law_inverse(w2_bits: tuple[bool, ...], p: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of nu -> p pi'^{-1}(nu) - w2(nu) on flat coordinates."""
    n = len(w2_bits)
    fi = Matrix(_flat_frob_inverse_matrix(n))
    wm = Matrix(_flat_weyl_matrix(WeylElement(w2_bits)))
    inv = (p * fi - wm).inv()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(r)) for r in range(inv.rows))


def presentation_genericity(t: DoubleTypePresentation) -> int:
    """Depth of mu' - eta' with pairings read mod p."""
    p = t.p
    return min(min(r, p - 2 - r) for r in ((n - 1) % p for n in t.mu.pairings()))


def find_equivalence(t1: DoubleTypePresentation, t2: DoubleTypePresentation, warn: bool = True):
    """Return (s, nu) carrying t1 to t2, or None."""
    if t1.p != t2.p or len(t1.mu) != len(t2.mu):
        raise LatticeError("presentations have different p or f")
    p = t1.p
    if warn and (presentation_genericity(t1) < 1 or presentation_genericity(t2) < 1):
        warnings.warn("equivalence test below 1-generic; a negative answer may be incomplete",
                      GenericityWarning, stacklevel=2)
    n = len(t1.mu)
    target_w = t2.s
    for s in DoubleWeylElement.all(n):
        if s * t1.s * s.frobenius("forward").inverse() != target_w:
            continue
        rhs = (t2.mu - weyl_act(s, t1.mu)).flat()
        inv = _law_inverse(target_w.bits, p)
        sol = [sum(c * x for c, x in zip(row, rhs)) for row in inv]
        if all(x.denominator == 1 for x in sol):
            nu = DoubleCharacter.from_flat([int(x) for x in sol])
            return s, nu
    return None


def equivalent(t1: DoubleTypePresentation, t2: DoubleTypePresentation, warn: bool = True) -> bool:
    return find_equivalence(t1, t2, warn) is not None


def apply_law(t: DoubleTypePresentation, s: DoubleWeylElement, nu: DoubleCharacter) -> DoubleTypePresentation:
    """The presentation obtained from t by the change-of-presentation law at (s, nu)."""
    new_w = s * t.s * s.frobenius("forward").inverse()
    new_mu = weyl_act(s, t.mu) + frobenius(nu, "inverse").scale(t.p) - weyl_act(new_w, nu)
    return DoubleTypePresentation(new_w, new_mu, t.p)


def dual(t: DoubleTypePresentation) -> DoubleTypePresentation:
    """Entrywise -w on the character; the Weyl part is unchanged."""
    swapped = DoubleCharacter(tuple((-b, -a) for a, b in t.mu))
    return DoubleTypePresentation(t.s, swapped, t.p)


def frobenius_twist(t: DoubleTypePresentation) -> DoubleTypePresentation:
    """The f-th power Frobenius twist swaps the two halves of both components."""
    s1, s2 = t.s.halves()
    m1, m2 = t.mu.halves()
    return DoubleTypePresentation(DoubleWeylElement.join(s2, s1), DoubleCharacter.join(m2, m1), t.p)


def is_conjugate_self_dual(t: DoubleTypePresentation, warn: bool = True) -> bool:
    return equivalent(dual(t), frobenius_twist(t), warn)


# ---------------------------------------------------------------------------
# admissible words


@dataclass(frozen=True)
class AdmissibleWord:
    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        letters = tuple(normalize_letter(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters or len(letters) % 2:
            raise LatticeError("an admissible word has 2f letters")

    @property
    def f(self) -> int:
        return len(self.letters) // 2

    def is_symmetric(self) -> bool:
        f = self.f
        return self.letters[:f] == self.letters[f:]

    @classmethod
    def symmetric(cls, half: Sequence[str]) -> "AdmissibleWord":
        half = tuple(half)
        return cls(half + half)

    def to_json(self) -> list[str]:
        return [x.lower() for x in self.letters]

    def __str__(self) -> str:
        return "(" + ",".join(x.lower() for x in self.letters) + ")"


def normalize_letter(x: str) -> str:
    up = str(x).strip().upper()
    if up not in LETTERS:
        raise LatticeError(f"unknown admissible letter {x!r}")
    return up


def star(w: AdmissibleWord) -> list[tuple[tuple[int, int], bool]]:
    """(w'*)_{j'} is read off the letter at slot 2f-1-j'."""
    n = len(w.letters)
    return [_STAR[w.letters[n - 1 - jp]] for jp in range(n)]


def unstar(starred: Sequence[tuple[tuple[int, int], bool]]) -> AdmissibleWord:
    inverse = {v: k for k, v in _STAR.items()}
    n = len(starred)
    return AdmissibleWord(tuple(inverse[(tuple(starred[n - 1 - i][0]), starred[n - 1 - i][1])] for i in range(n)))


def all_words(f: int) -> list[AdmissibleWord]:
    return [AdmissibleWord(ls) for ls in product(LETTERS, repeat=2 * f)]


def admissible_symmetric(f: int) -> list[AdmissibleWord]:
    return [AdmissibleWord.symmetric(half) for half in product(LETTERS, repeat=f)]


def type_for_shape(param: TameParam, w: AdmissibleWord) -> DoubleTypePresentation:
    """tau'_{w~'} = tau'((s,s) w'^{-1}, BC(mu) + eta' - (s,s) w'^{-1}(nu'))."""
    if w.f != param.f:
        raise LatticeError("word length does not match f")
    param.require_depth(1)
    starred = star(w)
    nu = DoubleCharacter(tuple(t for t, _ in starred))
    wp = DoubleWeylElement(tuple(b for _, b in starred))
    weyl = DoubleWeylElement.diagonal(param.s) * wp.inverse()
    mu = base_change(param.mu) + eta_prime(param.f) - weyl_act(weyl, nu)
    return DoubleTypePresentation(weyl, mu, param.p)


def _unitary_data(param: TameParam, w: AdmissibleWord) -> tuple[WeylElement, UnitaryCharacter]:
    """For a symmetric word: (w, nu) in the unitary slots, slot j read from letter f-1-j."""
    if not w.is_symmetric():
        raise PreconditionError("word is not symmetric")
    f = param.f
    letters = [w.letters[f - 1 - j] for j in range(f)]
    return (WeylElement(tuple(_STAR[x][1] for x in letters)),
            UnitaryCharacter(tuple(_STAR[x][0] for x in letters)))


def jh_of_word(param: TameParam, w: AdmissibleWord) -> list[SerreWeightClass]:
    """JH set of tau'_{w~'} for a symmetric word."""
    weyl, nu = _unitary_data(param, w)
    return jh_factors(param.mu, param.s, weyl, nu, param.p, check_self_dual=False).weights


def jh_of_type(t: DoubleTypePresentation) -> list[SerreWeightClass]:
    """JH set of a presentation of the shape tau'((v, v), BC(lam))."""
    s1, s2 = t.s.halves()
    first, _ = t.mu.halves()
    if s1 != s2 or base_change(first) != t.mu:
        raise PreconditionError("JH sets are implemented for presentations tau'((v,v), BC(lam)) only")
    return jh_of_diagonal(s1, first, t.p)


# ---------------------------------------------------------------------------
# theta and X(sigma)


@dataclass(frozen=True)
class ThetaAssignment:
    table: dict  # SerreWeightClass -> tuple of letters (length f)

    def __getitem__(self, sigma: SerreWeightClass) -> tuple[str, ...]:
        return self.table[sigma]

    def items(self):
        return sorted(self.table.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self) -> dict:
        return {sigma.label(): ",".join(x.lower() for x in word) for sigma, word in self.items()}


def incidence(word_half: Sequence[str], theta_word: Sequence[str]) -> bool:
    return all(a != b for a, b in zip(word_half, theta_word))


_THETA_CACHE: dict = {}


def theta(param: TameParam) -> ThetaAssignment:
    """The unique assignment sigma -> word in {T10, T01}^f governing JH incidence."""
    key = (param.p, param.f, param.s.bits, param.mu.entries)
    if key in _THETA_CACHE:
        return _THETA_CACHE[key]
    param.require_depth(1)
    f = param.f
    sigmas = list(predicted_weights_by_omega(param).values())
    words = admissible_symmetric(f)
    try:
        jh = {w: set(jh_of_word(param, w)) for w in words}
    except DepthError as exc:
        raise DepthError(f"theta needs the JH sets of all symmetric types: {exc}") from exc
    table = {}
    for sigma in sigmas:
        matches = []
        for cand in product((T10, T01), repeat=f):
            if all((sigma in jh[w]) == incidence(w.letters[:f], cand) for w in words):
                matches.append(cand)
        if len(matches) != 1:
            raise LatticeError(f"theta is not uniquely determined at {sigma}: {len(matches)} candidates")
        table[sigma] = matches[0]
    if len(set(table.values())) != len(table):
        raise LatticeError("theta is not injective")
    result = ThetaAssignment(table)
    _THETA_CACHE[key] = result
    return result


def x_sigma(param: TameParam, sigma: SerreWeightClass) -> list[AdmissibleWord]:
    th = theta(param)
    if sigma not in th.table:
        raise PreconditionError(f"{sigma} is not a predicted weight")
    word = th[sigma]
    return [w for w in admissible_symmetric(param.f) if incidence(w.letters[: param.f], word)]


# ---------------------------------------------------------------------------
# types containing a given weight


def types_containing_weight(sigma: SerreWeightClass, p: int | None = None, f: int | None = None,
                            check: bool = True) -> list[DoubleTypePresentation]:
    """tau'((s,s), BC(mu + rho - s(rho))) for s in W, where sigma = F(mu)."""
    mu = sigma.rep
    p = sigma.p if p is None else p
    f = len(mu) if f is None else f
    if depth(mu, p) < 2:
        raise DepthError(f"{sigma} is not 2-deep at p={p}")
    r = rho(f)
    out = [DoubleTypePresentation(DoubleWeylElement.diagonal(s), base_change(mu + r - weyl_act(s, r)), p)
           for s in WeylElement.all(f)]
    if check:
        for i, a in enumerate(out):
            for b in out[i + 1:]:
                if equivalent(a, b):
                    raise LatticeError("types containing a weight are not pairwise inequivalent")
    return out


def sort_words(words: Iterable[AdmissibleWord]) -> list[AdmissibleWord]:
    order = {x: i for i, x in enumerate(LETTERS)}
    return sorted(words, key=lambda w: [order[x] for x in w.letters])
