"""Character lattices of the rank-2 unitary torus and of its base change.

A character of the unitary torus is stored as ``f`` integer pairs ``(a_j, b_j)``;
a character of the base-changed torus as ``2f`` pairs.  Only the two
"unitary" coordinates are kept: every formula in the package depends on coroot
pairings and on classes modulo ``X^0``, so the similitude coordinates are
never needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from sympy import Matrix, isprime
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form

Pair = tuple[int, int]

UNITARY = "unitary"
DOUBLE = "double"


class LatticeError(ValueError):
    """Raised on malformed lattice data (bad lengths, bad indices, bad parameters)."""


@dataclass(frozen=True)
class Params:
    p: int
    f: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 3 or not isprime(self.p):
            raise LatticeError(f"p must be an odd prime, got {self.p!r}")
        if not isinstance(self.f, int) or self.f < 1:
            raise LatticeError(f"f must be a positive integer, got {self.f!r}")


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    """A sequence of integer pairs.  Subclasses fix the side."""

    entries: tuple[Pair, ...]

    side = "abstract"

    def __post_init__(self) -> None:
        fixed = tuple((int(a), int(b)) for a, b in self.entries)
        object.__setattr__(self, "entries", fixed)
        if not fixed:
            raise LatticeError("a character needs at least one embedding")

    @classmethod
    def from_flat(cls, values: Sequence[int]):
        if len(values) % 2:
            raise LatticeError("flat character data must have even length")
        return cls(tuple((values[i], values[i + 1]) for i in range(0, len(values), 2)))

    @classmethod
    def zero(cls, n: int):
        return cls(((0, 0),) * n)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> Pair:
        return self.entries[j]

    def __iter__(self):
        return iter(self.entries)

    def _check(self, other: "Character") -> None:
        if type(other) is not type(self) or len(other) != len(self):
            raise LatticeError("characters of different shape")

    def __add__(self, other: "Character"):
        self._check(other)
        return type(self)(tuple((a + c, b + d) for (a, b), (c, d) in zip(self, other)))

    def __sub__(self, other: "Character"):
        self._check(other)
        return type(self)(tuple((a - c, b - d) for (a, b), (c, d) in zip(self, other)))

    def __neg__(self):
        return type(self)(tuple((-a, -b) for a, b in self))

    def scale(self, k: int):
        return type(self)(tuple((k * a, k * b) for a, b in self))

    def flat(self) -> list[int]:
        return [x for pair in self for x in pair]

    def pairings(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in self)

    def __str__(self) -> str:
        return "(" + ",".join(f"({a},{b})" for a, b in self) + ")"


@dataclass(frozen=True, repr=False)
class UnitaryCharacter(Character):
    side = UNITARY

    @property
    def f(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"UnitaryCharacter{self}"


@dataclass(frozen=True, repr=False)
class DoubleCharacter(Character):
    side = DOUBLE

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.entries) % 2:
            raise LatticeError("a double character has an even number of embeddings")

    @property
    def f(self) -> int:
        return len(self.entries) // 2

    def halves(self) -> tuple[UnitaryCharacter, UnitaryCharacter]:
        f = self.f
        return UnitaryCharacter(self.entries[:f]), UnitaryCharacter(self.entries[f:])

    @classmethod
    def join(cls, first: Character, second: Character) -> "DoubleCharacter":
        return cls(tuple(first.entries) + tuple(second.entries))

    def __repr__(self) -> str:
        return f"DoubleCharacter{self}"


def rho(f: int) -> UnitaryCharacter:
    """The shift (1,0) in every embedding."""
    return UnitaryCharacter(((1, 0),) * f)


def eta_prime(f: int) -> DoubleCharacter:
    return DoubleCharacter(((1, 0),) * (2 * f))


def rho_j(f: int, j: int) -> UnitaryCharacter:
    return UnitaryCharacter(tuple((1, 0) if i == j else (0, 0) for i in range(f)))


def alpha_j(f: int, j: int) -> UnitaryCharacter:
    return UnitaryCharacter(tuple((1, -1) if i == j else (0, 0) for i in range(f)))


def shift_for(mu: Character) -> Character:
    """rho on the unitary side, eta' on the double side."""
    if isinstance(mu, DoubleCharacter):
        return eta_prime(mu.f)
    return rho(len(mu))


def coroot_pairing(mu: Character, j: int) -> int:
    if not 0 <= j < len(mu):
        raise LatticeError(f"embedding index {j} out of range for length {len(mu)}")
    a, b = mu[j]
    return a - b


# ---------------------------------------------------------------------------
# Weyl groups


@dataclass(frozen=True)
class WeylElement:
    """An element of W = {1, w}^f; ``True`` marks the non-trivial element in a slot."""

    bits: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))

    @classmethod
    def identity(cls, n: int):
        return cls((False,) * n)

    @classmethod
    def from_string(cls, text: str):
        if not text or any(ch not in "01" for ch in text):
            raise LatticeError(f"Weyl bitstring must consist of 0/1, got {text!r}")
        return cls(tuple(ch == "1" for ch in text))

    @classmethod
    def all(cls, n: int):
        return [cls(bits) for bits in product((False, True), repeat=n)]

    def __len__(self) -> int:
        return len(self.bits)

    def __mul__(self, other: "WeylElement"):
        if type(other) is not type(self) or len(other) != len(self):
            raise LatticeError("Weyl elements of different shape")
        return type(self)(tuple(x != y for x, y in zip(self.bits, other.bits)))

    def inverse(self):
        return self

    def is_identity(self) -> bool:
        return not any(self.bits)

    def frobenius(self, direction: str = "forward"):
        """pi(s)_j = s_{j-1}; the negation part of pi is central in W, so only the shift survives."""
        b = self.bits
        if direction == "forward":
            return type(self)(b[-1:] + b[:-1])
        if direction == "inverse":
            return type(self)(b[1:] + b[:1])
        raise LatticeError(f"unknown direction {direction!r}")

    def act_on_graph(self, omega: Sequence[int]) -> tuple[int, ...]:
        if len(omega) != len(self):
            raise LatticeError("length mismatch between Weyl element and graph vector")
        return tuple(-x if bit else x for x, bit in zip(omega, self.bits))

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class DoubleWeylElement(WeylElement):
    """An element of W' = W x W, stored as 2f bits."""

    @classmethod
    def diagonal(cls, s: WeylElement) -> "DoubleWeylElement":
        return cls(s.bits + s.bits)

    @classmethod
    def join(cls, s1: WeylElement, s2: WeylElement) -> "DoubleWeylElement":
        return cls(tuple(s1.bits) + tuple(s2.bits))

    def halves(self) -> tuple[WeylElement, WeylElement]:
        n = len(self.bits) // 2
        return WeylElement(self.bits[:n]), WeylElement(self.bits[n:])


def weyl_act(w: WeylElement, mu: Character) -> Character:
    if len(w) != len(mu):
        raise LatticeError("length mismatch between Weyl element and character")
    return type(mu)(tuple((b, a) if bit else (a, b) for (a, b), bit in zip(mu, w.bits)))


# ---------------------------------------------------------------------------
# Frobenius and base change


def _neg_swap(pair: Pair) -> Pair:
    a, b = pair
    return (-b, -a)


def frobenius(mu: Character, direction: str = "forward", side: str | None = None) -> Character:
    """The Frobenius action pi (unitary side) or pi' (double side)."""
    side = side or mu.side
    e = mu.entries
    if side == DOUBLE:
        if not isinstance(mu, DoubleCharacter):
            raise LatticeError("double-side Frobenius needs a DoubleCharacter")
        if direction == "forward":
            return DoubleCharacter(e[-1:] + e[:-1])
        if direction == "inverse":
            return DoubleCharacter(e[1:] + e[:1])
    elif side == UNITARY:
        if not isinstance(mu, UnitaryCharacter):
            raise LatticeError("unitary-side Frobenius needs a UnitaryCharacter")
        if direction == "forward":
            return UnitaryCharacter((_neg_swap(e[-1]),) + e[:-1])
        if direction == "inverse":
            return UnitaryCharacter(e[1:] + (_neg_swap(e[0]),))
    else:
        raise LatticeError(f"unknown side {side!r}")
    raise LatticeError(f"unknown direction {direction!r}")


def frobenius_power(mu: Character, k: int) -> Character:
    direction = "forward" if k >= 0 else "inverse"
    for _ in range(abs(k)):
        mu = frobenius(mu, direction)
    return mu


def base_change(mu: UnitaryCharacter) -> DoubleCharacter:
    """mu -> (mu, -w(mu))."""
    if not isinstance(mu, UnitaryCharacter):
        raise LatticeError("base change takes a UnitaryCharacter")
    return DoubleCharacter(mu.entries + tuple(_neg_swap(x) for x in mu.entries))


# ---------------------------------------------------------------------------
# depth


def depth(mu: Character, p: int) -> int:
    """Largest N with N < <mu + shift, alpha_j> < p - N in every embedding (-1 if none)."""
    values = []
    for n in (a - b + 1 for a, b in mu):
        values.append(min(n - 1, p - 1 - n))
    return max(min(values), -1)


def is_deep(mu: Character, p: int, n: int) -> bool:
    return depth(mu, p) >= n


# ---------------------------------------------------------------------------
# sublattices


def x0_coords(delta: Character) -> tuple[int, ...] | None:
    """The c-vector of an element of X^0, or None if ``delta`` is not in X^0."""
    if any(a != b for a, b in delta):
        return None
    return tuple(a for a, _ in delta)


@lru_cache(maxsize=None)
def p_minus_pi_matrix(p: int, n: int, side: str) -> tuple[tuple[int, ...], ...]:
    """Columns are (p - pi) applied to the standard basis of X^0 (in c-coordinates).

    ``n`` is the number of embeddings of the torus in question (f or 2f).
    """
    cols = []
    for j in range(n):
        basis = [(0, 0)] * n
        basis[j] = (1, 1)
        if side == UNITARY:
            chi = UnitaryCharacter(tuple(basis))
        else:
            chi = DoubleCharacter(tuple(basis))
        image = chi.scale(p) - frobenius(chi, "forward", side)
        cols.append(x0_coords(image))
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


@lru_cache(maxsize=None)
def p_minus_pi_hnf(p: int, n: int, side: str) -> tuple[tuple[int, ...], ...]:
    """Column-style Hermite normal form (upper triangular) of (p - pi)X^0."""
    h = hermite_normal_form(Matrix(p_minus_pi_matrix(p, n, side)))
    if h.shape != (n, n):
        raise LatticeError("unexpected rank drop in (p - pi)X^0")
    return tuple(tuple(int(h[r, c]) for c in range(n)) for r in range(n))


def reduce_mod_hnf(c: Sequence[int], hnf: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Reduce an integer vector modulo the column lattice of an upper-triangular HNF.

    The result has 0 <= c_i < hnf[i][i] for every i, and is the unique such
    representative of the coset.
    """
    c = list(c)
    n = len(c)
    for i in range(n - 1, -1, -1):
        q = c[i] // hnf[i][i]
        if q:
            for r in range(i + 1):
                c[r] -= q * hnf[r][i]
    return tuple(c)


def lattice_index(p: int, f: int, side: str = UNITARY) -> int:
    """[X^0 : (p - pi)X^0], computed from the Smith normal form."""
    n = f if side == UNITARY else 2 * f
    snf = smith_normal_form(Matrix(p_minus_pi_matrix(p, n, side)))
    result = 1
    for i in range(n):
        result *= abs(int(snf[i, i]))
    return result


def in_sublattice(delta: Character, sublattice: str, p: int | None = None) -> bool:
    """Membership of ``delta`` in (p - pi)X^0 (``"pMinusPiX0"``) or in the root lattice (``"rootLattice"``)."""
    if sublattice == "rootLattice":
        return all(a + b == 0 for a, b in delta)
    if sublattice == "pMinusPiX0":
        if p is None:
            raise LatticeError("membership in (p - pi)X^0 needs p")
        c = x0_coords(delta)
        if c is None:
            return False
        hnf = p_minus_pi_hnf(p, len(delta), delta.side)
        return not any(reduce_mod_hnf(c, hnf))
    raise LatticeError(f"unknown sublattice {sublattice!r}")


def make_character(values: Iterable[int], side: str = UNITARY) -> Character:
    values = list(values)
    cls = UnitaryCharacter if side == UNITARY else DoubleCharacter
    return cls.from_flat(values)
