"""Crystalline lift data: Hodge-Tate weights, exponent vectors and the FL range.

Also provides an independent realization of tame types by exponents of
fundamental characters, used to cross-check presentation equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import (
    Character,
    DoubleCharacter,
    DoubleWeylElement,
    LatticeError,
    UnitaryCharacter,
    WeylElement,
    base_change,
    eta_prime,
    weyl_act,
)
from .types import DoubleTypePresentation, equivalent
from .weights import PreconditionError, TameParam, predicted_weights


def _swap(pair):
    a, b = pair
    return (b, a)


def ht_weights(mu: UnitaryCharacter, p: int | None = None) -> DoubleCharacter:
    """Slot j: mu_j + (1,0); slot j+f: -w(mu_j) + (1,0)."""
    if p is not None and any(not 0 <= n <= p - 1 for n in mu.pairings()):
        raise PreconditionError(f"{mu} is not p-restricted")
    return base_change(mu) + eta_prime(len(mu))


def fl_range_check(mu_prime: DoubleCharacter, p: int) -> bool:
    """mu_{j',2} + p > mu_{j',1} > mu_{j',2} for all j', and mu_{j'+f,i} = 1 - mu_{j',3-i} for j' < f."""
    f = len(mu_prime) // 2
    for a, b in mu_prime:
        if not b + p > a > b:
            return False
    for j in range(f):
        a, b = mu_prime[j]
        c, d = mu_prime[j + f]
        if (c, d) != (1 - b, 1 - a):
            return False
    return True


def _weyl_prefix(v: WeylElement, jp: int) -> bool:
    """Parity of v_1 ... v_{j'} with indices taken mod f."""
    f = len(v)
    return sum(v.bits[i % f] for i in range(1, jp + 1)) % 2 == 1


def alpha_exponents(v: WeylElement, mu: UnitaryCharacter, p: int):
    """alpha_{j'} = v_1^{-1}...v_{j'}^{-1}((BC(mu) + eta')_{j'}) and a0 = sum p^{j'} alpha_{j'}."""
    if len(v) != len(mu):
        raise LatticeError("length mismatch")
    shifted = base_change(mu) + eta_prime(len(mu))
    alphas = []
    for jp, pair in enumerate(shifted):
        alphas.append(_swap(pair) if _weyl_prefix(v, jp) else pair)
    a1 = sum(p ** jp * a for jp, (a, _) in enumerate(alphas))
    a2 = sum(p ** jp * b for jp, (_, b) in enumerate(alphas))
    return alphas, (a1, a2)


def alpha_duality_holds(v: WeylElement, alphas: Sequence[tuple[int, int]]) -> bool:
    """alpha_{j'} = -v_tau^{-1} w(alpha_{j'-f}) + (1,1), indices mod 2f, v_tau = v_0 v_{f-1} ... v_1."""
    n = len(alphas)
    f = n // 2
    v_tau = sum(v.bits) % 2 == 1
    for jp in range(n):
        a, b = alphas[(jp - f) % n]
        image = (b, a)  # w
        if v_tau:
            image = _swap(image)
        expected = (1 - image[0], 1 - image[1])
        if tuple(alphas[jp]) != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# exponent realization of tame types


def type_exponents(t: DoubleTypePresentation) -> tuple[int, int]:
    """Exponents of the two characters of niveau 4f (mod p^{4f} - 1) realizing t.

    With beta_{j'} = w'_1^{-1}...w'_{j'}^{-1}(mu'_{j'}) and b = sum p^{j'} beta_{j'}:
    if the product of the w'_{j'} is trivial the type is a sum of two niveau-2f
    characters with exponents b_1, b_2; otherwise it is induced from one
    niveau-4f character with exponent b_1 + p^{2f} b_2.
    """
    p = t.p
    n = len(t.mu)
    bits = t.s.bits
    betas = []
    parity = False
    for jp in range(n):
        if jp >= 1:
            parity ^= bits[jp]
        pair = t.mu[jp]
        betas.append(_swap(pair) if parity else pair)
    b1 = sum(p ** jp * a for jp, (a, _) in enumerate(betas))
    b2 = sum(p ** jp * b for jp, (_, b) in enumerate(betas))
    modulus = p ** (2 * n) - 1
    if sum(bits) % 2 == 0:
        lift = p ** n + 1
        pair = ((b1 * lift) % modulus, (b2 * lift) % modulus)
    else:
        pair = ((b1 + p ** n * b2) % modulus, (b2 + p ** n * b1) % modulus)
    return tuple(sorted(pair))


def exponent_equivalent(t1: DoubleTypePresentation, t2: DoubleTypePresentation) -> bool:
    return type_exponents(t1) == type_exponents(t2)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftData:
    ht_weights: DoubleCharacter
    v: WeylElement
    alphas: tuple
    a0: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "ht": [list(x) for x in self.ht_weights],
            "v": self.v.to_string(),
            "alphas": [list(x) for x in self.alphas],
            "a0": list(self.a0),
        }


def presentation_candidates(param: TameParam, mu: UnitaryCharacter) -> list[WeylElement]:
    """All v with tau'((v,v), BC(mu) + eta') equivalent to tau'((s,s), BC(nu) + eta')."""
    p, f = param.p, param.f
    target = DoubleTypePresentation(DoubleWeylElement.diagonal(param.s),
                                    base_change(param.mu) + eta_prime(f), p)
    out = []
    for v in WeylElement.all(f):
        cand = DoubleTypePresentation(DoubleWeylElement.diagonal(v), base_change(mu) + eta_prime(f), p)
        if equivalent(cand, target):
            out.append(v)
    return out


def find_presentation_v(param: TameParam, mu: UnitaryCharacter) -> WeylElement:
    """Some v presenting the base change of rho-bar through BC(mu) + eta'."""
    from .weights import canonicalize

    sigma = canonicalize(mu, param.p)
    if sigma not in set(predicted_weights(param)):
        raise PreconditionError(f"{sigma} is not a predicted weight")
    found = presentation_candidates(param, mu)
    if not found:
        raise PreconditionError(f"no v presents the parameter through {mu}")
    return found[0]


def lift_data(param: TameParam, mu: UnitaryCharacter) -> LiftData:
    v = find_presentation_v(param, mu)
    alphas, a0 = alpha_exponents(v, mu, param.p)
    return LiftData(ht_weights(mu, param.p), v, tuple(alphas), a0)
