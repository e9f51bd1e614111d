"""The extension graph: Sigma, length-zero affine Weyl elements, and the maps t_mu.

Graph vectors are classes in X*/X^0, which is free of rank f (or 2f) via
coroot pairings; they are stored as integer tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .lattice import (
    DOUBLE,
    UNITARY,
    Character,
    DoubleCharacter,
    LatticeError,
    UnitaryCharacter,
    WeylElement,
    frobenius,
    shift_for,
    weyl_act,
)


class RegionError(ValueError):
    """A graph vector lies outside the recentred region of mu."""


@dataclass(frozen=True)
class GraphVector:
    coords: tuple[int, ...]
    side: str = UNITARY

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, j: int) -> int:
        return self.coords[j]


def coords(omega) -> tuple[int, ...]:
    if isinstance(omega, GraphVector):
        return omega.coords
    if isinstance(omega, int):
        return (omega,)
    return tuple(int(x) for x in omega)


def sigma_set(f: int, side: str = UNITARY) -> list[GraphVector]:
    """All 0/1 vectors of length f, in lexicographic order."""
    if f < 1:
        raise LatticeError("f must be positive")
    return [GraphVector(bits, side) for bits in product((0, 1), repeat=f)]


def graph_class(mu: Character) -> tuple[int, ...]:
    """Image of a character in X*/X^0."""
    return mu.pairings()


def lift(omega, side: str = UNITARY) -> Character:
    """The preferred lift (omega_j, 0) of a graph vector."""
    cls = UnitaryCharacter if side == UNITARY else DoubleCharacter
    return cls(tuple((x, 0) for x in coords(omega)))


def in_recentered_region(omega, mu: Character, p: int) -> bool:
    om = coords(omega)
    if len(om) != len(mu):
        raise LatticeError("graph vector and character have different lengths")
    return all(0 <= n + x < p - 1 for n, x in zip(mu.pairings(), om))


def bc_graph(omega) -> GraphVector:
    om = coords(omega)
    return GraphVector(om + om, DOUBLE)


def adjacency(omega, omega_prime) -> bool:
    """True iff the two vectors differ by a single +-e_j."""
    a, b = coords(omega), coords(omega_prime)
    if len(a) != len(b):
        raise LatticeError("graph vectors of different lengths")
    diff = [x - y for x, y in zip(a, b)]
    nonzero = [d for d in diff if d]
    return len(nonzero) == 1 and abs(nonzero[0]) == 1


def graph_distance(omega, omega_prime) -> int:
    a, b = coords(omega), coords(omega_prime)
    if len(a) != len(b):
        raise LatticeError("graph vectors of different lengths")
    return sum(1 for x, y in zip(a, b) if x != y)


# ---------------------------------------------------------------------------
# length-zero elements


@dataclass(frozen=True)
class OmegaElement:
    """t_lambda w, stored as a translation character and a Weyl element.

    ``certificate`` is a 0-deep test character whose p-dot image was checked
    to be 0-deep again for the p used in the check.
    """

    weyl: WeylElement
    translation: Character
    certificate: Character | None = None

    def dot(self, x: Character, p: int) -> Character:
        """t_lambda w .p x = w(x + rho) + p lambda - rho."""
        r = shift_for(x)
        return weyl_act(self.weyl, x + r) + self.translation.scale(p) - r

    def is_identity(self) -> bool:
        return self.weyl.is_identity() and not any(self.translation.flat())


def _stabilizes(eps: int, lam: tuple[int, int]) -> bool:
    # On the pairing x = <nu + rho, alpha>, t_lam w acts by x -> eps*x + p*(l1 - l2).
    # The open interval (0, p) is preserved for every p exactly in these two cases.
    c = lam[0] - lam[1]
    return (eps == 1 and c == 0) or (eps == -1 and c == 1)


@dataclass(frozen=True)
class _SlotSolution:
    swap: bool
    translation: tuple[int, int]


@lru_cache(maxsize=None)
def _slot_search(k: int, bound: int) -> _SlotSolution:
    r = k % 2
    m = (k - r) // 2
    found = []
    for l1, l2 in product(range(-bound, bound + 1), repeat=2):
        if l1 + l2 != r:
            continue
        for eps in (1, -1):
            if _stabilizes(eps, (l1, l2)):
                found.append(_SlotSolution(eps == -1, (l1 + m, l2 + m)))
    if len(found) > 1:
        raise LatticeError(f"non-unique alcove stabilizer for class {k}")
    if not found:
        raise LookupError(f"no alcove stabilizer for class {k} within bound {bound}")
    return found[0]


def omega_element(classvec: Sequence[int], side: str = UNITARY, p: int | None = None) -> OmegaElement:
    """The alcove stabilizer whose class in X*/Lambda_rt is ``classvec``.

    The class of a character in X*/Lambda_rt is a_j + b_j in each slot.
    """
    return _omega_element(tuple(int(k) for k in classvec), side, p)


@lru_cache(maxsize=4096)
def _omega_element(classvec: tuple[int, ...], side: str, p: int | None) -> OmegaElement:
    slots = []
    for k in classvec:
        try:
            slots.append(_slot_search(k, 2))
        except LookupError:
            try:
                slots.append(_slot_search(k, 4))
            except LookupError as exc:  # pragma: no cover - cannot happen
                raise LatticeError(str(exc)) from exc
    cls = UnitaryCharacter if side == UNITARY else DoubleCharacter
    weyl = WeylElement(tuple(s.swap for s in slots))
    translation = cls(tuple(s.translation for s in slots))
    element = OmegaElement(weyl, translation)
    certificate = cls(((0, 0),) * len(classvec))
    if p is not None:
        image = element.dot(certificate, p)
        if not all(0 < n + 1 < p for n in image.pairings()):
            raise LatticeError("alcove certificate failed")
        element = OmegaElement(weyl, translation, certificate)
    return element


def _class_mod_roots(mu: Character) -> tuple[int, ...]:
    return tuple(a + b for a, b in mu)


def omega_for(omega_lift: Character, p: int | None = None) -> OmegaElement:
    """The Omega element attached to -pi^{-1} of a lift of a graph vector."""
    target = -frobenius(omega_lift, "inverse")
    return omega_element(_class_mod_roots(target), omega_lift.side, p)


def t_map_raw(mu: Character, omega, p: int, omega_lift: Character | None = None) -> Character:
    """The character w~ .p (mu + omega_lift), before reduction mod (p - pi)X^0."""
    side = mu.side
    om = coords(omega)
    if omega_lift is None:
        omega_lift = lift(om, side)
    elif omega_lift.pairings() != om:
        raise LatticeError("supplied lift does not lie over omega")
    if not in_recentered_region(om, mu, p):
        raise RegionError(f"omega={om} is outside the recentred region of {mu} at p={p}")
    element = omega_for(omega_lift, p)
    return element.dot(mu + omega_lift, p)


def t_map(mu: UnitaryCharacter, omega, p: int, omega_lift: Character | None = None):
    from .weights import canonicalize

    if not isinstance(mu, UnitaryCharacter):
        raise LatticeError("t_map takes a UnitaryCharacter; use t_map_double on the double side")
    return canonicalize(t_map_raw(mu, omega, p, omega_lift), p)


def t_map_double(mu: DoubleCharacter, omega, p: int, omega_lift: Character | None = None):
    from .weights import canonicalize

    if not isinstance(mu, DoubleCharacter):
        raise LatticeError("t_map_double takes a DoubleCharacter")
    return canonicalize(t_map_raw(mu, omega, p, omega_lift), p)


def region_points(mu: Character, p: int) -> list[tuple[int, ...]]:
    """All graph vectors in the recentred region of mu (a finite box)."""
    ranges = [range(-n, p - 1 - n) for n in mu.pairings()]
    return [tuple(x) for x in product(*ranges)]
