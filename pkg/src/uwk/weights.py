"""Serre weight classes, predicted weight sets and Jordan-Hoelder sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .extgraph import (
    adjacency,
    coords,
    in_recentered_region,
    RegionError,
    sigma_set,
    t_map,
)
from .lattice import (
    DOUBLE,
    UNITARY,
    Character,
    DoubleCharacter,
    LatticeError,
    Params,
    UnitaryCharacter,
    WeylElement,
    base_change,
    depth,
    in_sublattice,
    p_minus_pi_hnf,
    reduce_mod_hnf,
    rho,
    weyl_act,
)


class PreconditionError(ValueError):
    """An input violates a stated precondition (depth, lattice class, membership)."""


class DepthError(PreconditionError):
    pass


@dataclass(frozen=True, eq=False)
class SerreWeightClass:
    """F(lambda) for a p-restricted lambda, stored through its canonical representative."""

    rep: Character
    p: int

    @property
    def side(self) -> str:
        return self.rep.side

    def _key(self):
        return (self.side, self.p, tuple(self.rep.flat()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SerreWeightClass):
            return NotImplemented
        if other.side != self.side:
            raise TypeError("cannot compare Serre weights on different sides")
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def sort_key(self):
        return tuple(self.rep.flat())

    def __lt__(self, other: "SerreWeightClass") -> bool:
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        return {"side": self.side, "rep": [list(x) for x in self.rep]}

    def label(self) -> str:
        return "F(" + ",".join(f"({a},{b})" for a, b in self.rep) + ")"

    def __str__(self) -> str:
        return self.label()


def canonicalize(lam: Character, p: int) -> SerreWeightClass:
    """Canonical representative of the class of ``lam`` modulo (p - pi)X^0.

    The coroot pairings are invariant under X^0, so they must already lie in
    [0, p-1].  The second coordinates are reduced by the Hermite normal form.
    """
    pairings = lam.pairings()
    if any(not 0 <= n <= p - 1 for n in pairings):
        raise PreconditionError(f"{lam} is not p-restricted for p={p}")
    hnf = p_minus_pi_hnf(p, len(lam), lam.side)
    b = reduce_mod_hnf([b for _, b in lam], hnf)
    return SerreWeightClass(type(lam)(tuple((y + n, y) for y, n in zip(b, pairings))), p)


def weights_equal(a: Character, b: Character, p: int) -> bool:
    return canonicalize(a, p) == canonicalize(b, p)


@dataclass(frozen=True)
class TameParam:
    """(s, mu) presenting the restriction to inertia of a tame parameter as tau(s, mu + rho)."""

    s: WeylElement
    mu: UnitaryCharacter
    p: int
    f: int

    def __post_init__(self) -> None:
        Params(self.p, self.f)
        if len(self.s) != self.f or len(self.mu) != self.f:
            raise LatticeError("s and mu must both have length f")

    def depth(self) -> int:
        return depth(self.mu, self.p)

    def require_depth(self, n: int) -> None:
        d = self.depth()
        if d < n:
            raise DepthError(f"mu={self.mu} is {d}-deep at p={self.p}; need {n}-deep")


def sorted_weights(ws: Iterable[SerreWeightClass]) -> list[SerreWeightClass]:
    return sorted(ws, key=SerreWeightClass.sort_key)


def predicted_weights(param: TameParam) -> list[SerreWeightClass]:
    """W?(s, mu) = {F(t_mu(s omega)) : omega in Sigma}, sorted."""
    param.require_depth(1)
    out = {t_map(param.mu, param.s.act_on_graph(om.coords), param.p) for om in sigma_set(param.f)}
    return sorted_weights(out)


def predicted_weights_by_omega(param: TameParam) -> dict[tuple[int, ...], SerreWeightClass]:
    param.require_depth(1)
    return {
        om.coords: t_map(param.mu, param.s.act_on_graph(om.coords), param.p)
        for om in sigma_set(param.f)
    }


@dataclass(frozen=True)
class JHResult:
    weights: list[SerreWeightClass]
    by_omega: dict
    type: object  # DoubleTypePresentation; typed loosely to avoid an import cycle


def _check_nu(nu: UnitaryCharacter) -> None:
    if not in_sublattice(nu - rho(len(nu)), "rootLattice"):
        raise PreconditionError(f"nu={nu} is not in rho + Lambda_rt")


def jh_factors(mu: UnitaryCharacter, s: WeylElement, w: WeylElement, nu: UnitaryCharacter, p: int,
               check_self_dual: bool = True) -> JHResult:
    """JH set of the reduction of the Deligne-Lusztig type attached to (s w^{-1}, mu + rho - s w^{-1} nu)."""
    from .types import DoubleTypePresentation, is_conjugate_self_dual

    f = len(mu)
    Params(p, f)
    if len(s) != f or len(w) != f or len(nu) != f:
        raise LatticeError("length mismatch")
    _check_nu(nu)
    v = s * w.inverse()
    shifted = mu - weyl_act(v, nu)
    if depth(shifted, p) < 1:
        raise DepthError(f"mu - s w^-1(nu) = {shifted} is not 1-deep at p={p}")
    nubar = nu.pairings()
    by_omega = {}
    for om in sigma_set(f):
        x = v.act_on_graph(tuple(a - b for a, b in zip(om.coords, nubar)))
        by_omega[om.coords] = t_map(mu, x, p)
    from .lattice import DoubleWeylElement

    t = DoubleTypePresentation(DoubleWeylElement.diagonal(v), base_change(mu + rho(f) - weyl_act(v, nu)), p)
    if check_self_dual and not is_conjugate_self_dual(t):
        raise LatticeError("Deligne-Lusztig type presentation failed conjugate self-duality")
    return JHResult(sorted_weights(set(by_omega.values())), by_omega, t)


def jh_of_diagonal(v: WeylElement, lam: UnitaryCharacter, p: int) -> list[SerreWeightClass]:
    """JH set of tau'((v, v), BC(lam)) with lam - rho 1-deep.

    Equal to {F(t_{lam - rho + v(rho)}(v(omega - rho))) : omega in Sigma}; this is
    the same set as jh_factors with s w^{-1} = v and nu = rho, re-centred.
    """
    f = len(lam)
    r = rho(f)
    base = lam - r
    if depth(base, p) < 1:
        raise DepthError(f"lam - rho = {base} is not 1-deep at p={p}")
    centre = base + weyl_act(v, r)
    out = set()
    for om in sigma_set(f):
        out.add(t_map(centre, v.act_on_graph(tuple(x - 1 for x in om.coords)), p))
    return sorted_weights(out)


def bc_weight(F: SerreWeightClass) -> SerreWeightClass:
    if F.side != UNITARY:
        raise LatticeError("base change of weights starts on the unitary side")
    return canonicalize(base_change(F.rep), F.p)


def epsilon_involution(F: SerreWeightClass) -> SerreWeightClass:
    """F'(mu, mu') -> F'(-w(mu'), -w(mu))."""
    if F.side != DOUBLE:
        raise LatticeError("epsilon acts on double-side weights")
    first, second = F.rep.halves()
    new = DoubleCharacter.join(-weyl_act(WeylElement((True,) * len(second)), second),
                               -weyl_act(WeylElement((True,) * len(first)), first))
    return canonicalize(new, F.p)


def ext1_dim(mu: UnitaryCharacter, omega, omega_prime, p: int) -> int:
    """dim Ext^1 between F(t_mu(omega)) and F(t_mu(omega')): 1 iff the vectors are adjacent."""
    for om in (omega, omega_prime):
        if not in_recentered_region(om, mu, p):
            raise RegionError(f"omega={coords(om)} is outside the recentred region of {mu}")
    return 1 if adjacency(omega, omega_prime) else 0


def all_restricted_weights(p: int, f: int) -> list[SerreWeightClass]:
    """Every Serre weight class of U11(F_{p^f}), one representative each."""
    from itertools import product

    from .lattice import lattice_index

    hnf = p_minus_pi_hnf(p, f, UNITARY)
    diag = [hnf[i][i] for i in range(f)]
    out = []
    for ns in product(range(p), repeat=f):
        for bs in product(*(range(d) for d in diag)):
            out.append(SerreWeightClass(UnitaryCharacter(tuple((b + n, b) for n, b in zip(ns, bs))), p))
    assert len(out) == p ** f * lattice_index(p, f)
    return out
