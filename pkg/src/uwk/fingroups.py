"""Finite unitary groups over small fields and modular representations of them.

Field elements are integers 0 <= x < p^d encoding the coefficient vector of a
polynomial residue in base p (constant term first).  The modulus is the
monic irreducible polynomial of degree d with the smallest such encoding.

The matrix groups sit inside GL2(F_{p^{2f}}); bar denotes x -> x^{p^f}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

from sympy import isprime

SIZE_GUARD = 10 ** 7
WORK_GUARD = 5 * 10 ** 7  # field operations of the direct enumeration, about p^(7f)

Mat2 = tuple[int, int, int, int]


class GuardError(ValueError):
    """The requested enumeration exceeds the size guard."""


class CentralCharacterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# finite fields


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    d = len(m) - 1
    for k in range(1, d // 2 + 1):
        for coeffs in product(range(p), repeat=k):
            if _poly_mod(m, list(coeffs) + [1], p) == []:
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree d with the smallest base-p encoding of its lower coefficients."""
    for code in range(p ** d):
        coeffs = [(code // p ** i) % p for i in range(d)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ValueError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """F_{p^d} with table-driven arithmetic."""

    def __init__(self, p: int, d: int):
        if not isprime(p) or d < 1:
            raise ValueError("need a prime p and d >= 1")
        self.p, self.d = p, d
        self.q = p ** d
        self.modulus = least_irreducible(p, d)
        q = self.q
        self._digits = [[(x // p ** i) % p for i in range(d)] for x in range(q)]
        self._mul = self._build_mul()
        self.add_table = [[self._enc([(a + b) % p for a, b in zip(self._digits[x], self._digits[y])])
                           for y in range(q)] for x in range(q)]
        self.neg_table = [self._enc([(-a) % p for a in self._digits[x]]) for x in range(q)]
        self.inv_table = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self._mul[x][y] == 1:
                    self.inv_table[x] = y
                    break
        self.generator = self._find_generator()
        self.log = {}
        self.exp = []
        g = 1
        for k in range(q - 1):
            self.exp.append(g)
            self.log[g] = k
            g = self._mul[g][self.generator]

    def _enc(self, digits: Sequence[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(digits))

    def _build_mul(self) -> list[list[int]]:
        p, d, q = self.p, self.d, self.q
        m = list(self.modulus)
        table = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(x, q):
                a, b = self._digits[x], self._digits[y]
                prod = [0] * (2 * d - 1)
                for i, ai in enumerate(a):
                    if ai:
                        for j, bj in enumerate(b):
                            prod[i + j] = (prod[i + j] + ai * bj) % p
                r = _poly_mod(prod, m, p)
                v = self._enc(r + [0] * (d - len(r)))
                table[x][y] = table[y][x] = v
        return table

    def _find_generator(self) -> int:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            x, order = g, 1
            while x != 1:
                x = self._mul[x][g]
                order += 1
            if order == q - 1:
                return g
        return 1

    # arithmetic
    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[x]

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[x] * k) % (self.q - 1)]

    def frobenius(self, x: int, k: int = 1) -> int:
        return self.pow(x, self.p ** k)

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> list[int]:
        return list(range(1, self.q))

    def subfield(self, e: int) -> list[int]:
        """Elements fixed by x -> x^{p^e}."""
        return [x for x in range(self.q) if self.frobenius(x, e) == x]

    def root_of_unity(self, n: int) -> int:
        if (self.q - 1) % n:
            raise CentralCharacterError(f"F_{self.q} has no primitive {n}-th root of unity")
        return self.exp[(self.q - 1) // n]

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.d})"


@lru_cache(maxsize=None)
def field(p: int, d: int) -> FiniteField:
    return FiniteField(p, d)


# ---------------------------------------------------------------------------
# 2x2 matrices over a field


def m_mul(F: FiniteField, a: Mat2, b: Mat2) -> Mat2:
    x, y, z, w = a
    e, f_, g, h = b
    ad, mu = F.add, F.mul
    return (ad(mu(x, e), mu(y, g)), ad(mu(x, f_), mu(y, h)),
            ad(mu(z, e), mu(w, g)), ad(mu(z, f_), mu(w, h)))


def m_det(F: FiniteField, a: Mat2) -> int:
    x, y, z, w = a
    return F.sub(F.mul(x, w), F.mul(y, z))


def m_inv(F: FiniteField, a: Mat2) -> Mat2:
    x, y, z, w = a
    di = F.inv(m_det(F, a))
    return (F.mul(w, di), F.neg(F.mul(y, di)), F.neg(F.mul(z, di)), F.mul(x, di))


def m_scalar(z: int) -> Mat2:
    return (z, 0, 0, z)


def m_bar(F: FiniteField, a: Mat2, e: int) -> Mat2:
    return tuple(F.frobenius(x, e) for x in a)


# ---------------------------------------------------------------------------
# groups


@dataclass
class MatrixGroupTable:
    name: str
    F: FiniteField
    elements: list
    index: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        self.elements = sorted(set(self.elements))
        self.index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index

    def mul(self, a: Mat2, b: Mat2) -> Mat2:
        return m_mul(self.F, a, b)

    def inv(self, a: Mat2) -> Mat2:
        return m_inv(self.F, a)

    def identity(self) -> Mat2:
        return (1, 0, 0, 1)

    def is_closed(self) -> bool:
        gens = self.generators()
        return all(self.mul(a, g) in self.index for a in self.elements for g in gens) and all(
            self.inv(a) in self.index for a in self.elements)

    def generators(self) -> list[Mat2]:
        """A small generating set, chosen greedily in element order."""
        if hasattr(self, "_gens"):
            return self._gens
        gens: list[Mat2] = []
        span = {self.identity()}
        for g in self.elements:
            if g in span:
                continue
            gens.append(g)
            queue = list(span)
            while queue:
                a = queue.pop()
                for h in gens:
                    b = self.mul(a, h)
                    if b not in span:
                        span.add(b)
                        queue.append(b)
            if len(span) == len(self.elements):
                break
        self._gens = gens
        return gens


def _unitary_solutions(F: FiniteField, e: int, kappas: Iterable[int]) -> list[Mat2]:
    """All g = [[x,y],[z,w]] with bar(g)^T Phi g = kappa Phi, Phi = [[0,1],[-1,0]]."""
    bar = lambda t: F.frobenius(t, e)
    fixed = set(F.subfield(e))
    out = []
    q = F.q
    for kappa in kappas:
        for x, z in product(range(q), repeat=2):
            if F.mul(bar(x), z) != F.mul(bar(z), x):
                continue
            if x:
                xb_inv = F.inv(bar(x))
                for y in range(q):
                    w = F.mul(F.add(kappa, F.mul(bar(z), y)), xb_inv)
                    if F.mul(bar(y), w) == F.mul(bar(w), y):
                        out.append((x, y, z, w))
            elif z:
                y = F.neg(F.mul(kappa, F.inv(bar(z))))
                for w in range(q):
                    if F.mul(bar(y), w) == F.mul(bar(w), y):
                        out.append((x, y, z, w))
        assert kappa in fixed
    return out


@dataclass
class GroupBundle:
    p: int
    f: int
    F: FiniteField  # k_{K_2}
    U11: MatrixGroupTable
    GU11: MatrixGroupTable
    GL2: MatrixGroupTable
    U1: MatrixGroupTable
    Z: MatrixGroupTable  # centre of GU11 = k_{K_2}^x
    ZG: MatrixGroupTable  # centre of GL2(k_K) = k_K^x

    def bar(self, x: int) -> int:
        return self.F.frobenius(x, self.f)

    def norm(self, z: int) -> int:
        return self.F.mul(z, self.bar(z))

    def multiplier(self, g: Mat2) -> int:
        x, y, z, w = g
        return self.F.sub(self.F.mul(self.bar(x), w), self.F.mul(self.bar(z), y))

    def orders(self) -> dict[str, int]:
        return {"U11": len(self.U11), "GU11": len(self.GU11), "GL2": len(self.GL2),
                "U1": len(self.U1), "Z": len(self.Z)}


def check_group_guard(p: int, f: int) -> None:
    if not isprime(p) or p < 3 or f < 1:
        raise ValueError("need an odd prime p and f >= 1")
    if p ** (4 * f) > SIZE_GUARD:
        raise GuardError(f"p^(4f) = {p ** (4 * f)} exceeds the enumeration guard {SIZE_GUARD}")
    if p ** (7 * f) > WORK_GUARD:
        raise GuardError(f"enumeration work p^(7f) = {p ** (7 * f)} exceeds {WORK_GUARD}")


@lru_cache(maxsize=None)
def build_groups(p: int, f: int) -> GroupBundle:
    check_group_guard(p, f)
    F = field(p, 2 * f)
    sub = F.subfield(f)
    sub_units = [x for x in sub if x]
    u11 = _unitary_solutions(F, f, [1])
    gu11 = _unitary_solutions(F, f, sub_units)
    gl2 = [(x, y, z, w) for x, y, z, w in product(sub, repeat=4)
           if F.sub(F.mul(x, w), F.mul(y, z))]
    u1 = [m_scalar(z) for z in F.units() if F.mul(z, F.frobenius(z, f)) == 1]
    zc = [m_scalar(z) for z in F.units()]
    zg = [m_scalar(z) for z in sub_units]
    mk = lambda n, els: MatrixGroupTable(n, F, els)
    return GroupBundle(p, f, F, mk("U11", u11), mk("GU11", gu11), mk("GL2", gl2), mk("U1", u1),
                       mk("Z", zc), mk("ZG", zg))


def group_orders(p: int, f: int) -> dict[str, int]:
    return build_groups(p, f).orders()


# ---------------------------------------------------------------------------
# pushout decompositions


@dataclass
class CheckReport:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _pushout(G: GroupBundle, left: MatrixGroupTable, amalgam: MatrixGroupTable) -> tuple[bool, str]:
    F = G.F
    fibres: dict[Mat2, set] = {}
    for u in left.elements:
        for zm in G.Z.elements:
            g = m_mul(F, u, zm)
            if g not in G.GU11:
                return False, f"{g} is not in GU11"
            fibres.setdefault(g, set()).add((u, zm))
    if len(fibres) != len(G.GU11):
        return False, f"image has {len(fibres)} of {len(G.GU11)} elements"
    for g, fib in fibres.items():
        u, zm = next(iter(fib))
        orbit = {(m_mul(F, u, m_inv(F, t)), m_mul(F, t, zm)) for t in amalgam.elements}
        if orbit != fib:
            return False, f"fibre over {g} is not an amalgam orbit"
    expected = len(left) * len(G.Z) // len(amalgam)
    if expected != len(G.GU11):
        return False, f"order identity fails: {expected} != {len(G.GU11)}"
    return True, f"|GU11| = {len(left)}*{len(G.Z)}/{len(amalgam)} = {expected}"


def pushout_check(p: int, f: int) -> list[CheckReport]:
    G = build_groups(p, f)
    out = []
    ok, msg = _pushout(G, G.U11, G.U1)
    out.append(CheckReport("pushout U11 x^U1 k2^x = GU11", ok, msg))
    ok, msg = _pushout(G, G.GL2, G.ZG)
    out.append(CheckReport("pushout GL2 x^{k^x} k2^x = GU11", ok, msg))
    return out


def decompose_unitary(G: GroupBundle, g: Mat2) -> tuple[Mat2, int]:
    """g = u * z with u in U11 and z a scalar in k_{K_2}^x."""
    kappa = G.multiplier(g)
    for z in G.F.units():
        if G.norm(z) == kappa:
            u = m_mul(G.F, g, m_scalar(G.F.inv(z)))
            if u in G.U11:
                return u, z
    raise ValueError(f"{g} has no decomposition")


def decompose_linear(G: GroupBundle, g: Mat2) -> tuple[Mat2, int]:
    """g = h * z with h in GL2(k_K) and z a scalar in k_{K_2}^x."""
    for z in G.F.units():
        h = m_mul(G.F, g, m_scalar(G.F.inv(z)))
        if h in G.GL2:
            return h, z
    raise ValueError(f"{g} has no decomposition")


# ---------------------------------------------------------------------------
# linear algebra over F_q


def mat_mul(F: FiniteField, A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        row[j] = F.add(row[j], F.mul(a, Bt[j]))
    return out


def mat_vec(F: FiniteField, A, v):
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            if a and x:
                s = F.add(s, F.mul(a, x))
        out.append(s)
    return out


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def rref(F: FiniteField, rows):
    """Row echelon form; returns (reduced rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                factor = M[i][c]
                M[i] = [F.sub(a, F.mul(factor, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: FiniteField, A) -> int:
    return len(rref(F, A)[0]) if A else 0


def nullspace(F: FiniteField, A) -> list[list[int]]:
    """Basis of {v : A v = 0}."""
    ncols = len(A[0])
    R, piv = rref(F, A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, piv):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def mat_inverse(F: FiniteField, A):
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def mat_add(F: FiniteField, A, B):
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F: FiniteField, c: int, A):
    return [[F.mul(c, a) for a in r] for r in A]


def mat_det(F: FiniteField, A) -> int:
    n = len(A)
    M = [list(r) for r in A]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                factor = F.mul(M[i][c], inv)
                M[i] = [F.sub(a, F.mul(factor, b)) for a, b in zip(M[i], M[c])]
    return d


def kron(F: FiniteField, A, B):
    return [[F.mul(a, b) for a in ra for b in rb] for ra in A for rb in B]


# ---------------------------------------------------------------------------
# modules


@dataclass
class GroupAlgebraModule:
    """A representation g -> action[g] (matrices acting on column vectors)."""

    group: MatrixGroupTable
    K: FiniteField
    action: dict
    name: str = ""

    @property
    def dim(self) -> int:
        return len(next(iter(self.action.values())))

    def gens(self) -> list:
        return [self.action[g] for g in self.group.generators()]

    def check_homomorphism(self) -> bool:
        K = self.K
        for a in self.group.generators():
            for b in self.group.elements:
                if mat_mul(K, self.action[a], self.action[b]) != self.action[self.group.mul(a, b)]:
                    return False
        return True

    def conjugate(self, P) -> "GroupAlgebraModule":
        Pi = mat_inverse(self.K, P)
        act = {g: mat_mul(self.K, mat_mul(self.K, P, m), Pi) for g, m in self.action.items()}
        return GroupAlgebraModule(self.group, self.K, act, self.name + "^P")

    def restrict(self, sub: MatrixGroupTable) -> "GroupAlgebraModule":
        return GroupAlgebraModule(sub, self.K, {g: self.action[g] for g in sub.elements}, self.name)


def direct_sum(mods: Sequence[GroupAlgebraModule]) -> GroupAlgebraModule:
    K = mods[0].K
    group = mods[0].group
    act = {}
    n = sum(m.dim for m in mods)
    for g in group.elements:
        M = [[0] * n for _ in range(n)]
        off = 0
        for m in mods:
            A = m.action[g]
            for i, row in enumerate(A):
                M[off + i][off:off + m.dim] = row
            off += m.dim
        act[g] = M
    return GroupAlgebraModule(group, K, act, "+".join(m.name for m in mods))


def tensor(a: GroupAlgebraModule, b: GroupAlgebraModule) -> GroupAlgebraModule:
    K = a.K
    return GroupAlgebraModule(a.group, K, {g: kron(K, a.action[g], b.action[g]) for g in a.group.elements},
                              f"{a.name}*{b.name}")


def sym_power_matrix(K: FiniteField, g: Mat2, n: int):
    """Action of g on Sym^n of the standard column representation, basis X^{n-i} Y^i."""
    x, y, z, w = g

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = K.add(out[i + j], K.mul(ai, bj))
        return out

    gx = [x, z]  # g X = x X + z Y  (coefficients in powers of Y)
    gy = [y, w]
    cols = []
    for i in range(n + 1):
        poly = [1]
        for _ in range(n - i):
            poly = poly_mul(poly, gx)
        for _ in range(i):
            poly = poly_mul(poly, gy)
        cols.append(poly)
    return [[cols[c][r] for c in range(n + 1)] for r in range(n + 1)]


def sym_det_module(group: MatrixGroupTable, K: FiniteField, n: int, b: int, twist: int = 0,
                   det_fn: Callable[[Mat2], int] | None = None) -> GroupAlgebraModule:
    """Sym^n(std^{(twist)}) tensor det^b on a group of matrices with entries in K."""
    act = {}
    for g in group.elements:
        h = tuple(K.frobenius(x, twist) for x in g) if twist else g
        d = det_fn(g) if det_fn else m_det(K, g)
        act[g] = mat_scale(K, K.pow(d, b), sym_power_matrix(K, h, n))
    return GroupAlgebraModule(group, K, act, f"Sym{n}det{b}" + (f"tw{twist}" if twist else ""))


def serre_weight_modules(p: int) -> dict[tuple[int, int], GroupAlgebraModule]:
    """F((n + b, b)) of U11(F_p), realized as Sym^n tensor det^b, for 0 <= n < p, 0 <= b <= p."""
    G = build_groups(p, 1)
    return {(n + b, b): sym_det_module(G.U11, G.F, n, b) for n in range(p) for b in range(p + 1)}


# subspaces and spin-up


def spin(K: FiniteField, gens, vectors) -> list[list[int]]:
    """Echelon basis of the smallest subspace containing ``vectors`` and stable under ``gens``."""
    basis, piv = rref(K, [list(v) for v in vectors if any(v)]) if vectors else ([], [])
    queue = [list(b) for b in basis]
    while queue:
        v = queue.pop()
        for A in gens:
            u = mat_vec(K, A, v)
            R, piv2 = rref(K, basis + [u])
            if len(R) > len(basis):
                basis = R
                queue.append(u)
    return basis


def _all_vectors(K: FiniteField, basis, limit: int = 20000):
    k = len(basis)
    if K.q ** k > limit:
        return None
    out = []
    for coeffs in product(range(K.q), repeat=k):
        if not any(coeffs):
            continue
        # one representative per line: first nonzero coefficient equal to 1
        first = next(c for c in coeffs if c)
        if first != 1:
            continue
        v = [0] * len(basis[0])
        for c, b in zip(coeffs, basis):
            if c:
                v = [K.add(x, K.mul(c, y)) for x, y in zip(v, b)]
        out.append(v)
    return out


@dataclass
class SimplicityResult:
    simple: bool
    submodule: list | None = None  # echelon basis of a proper nonzero submodule when not simple


def _random_element(K: FiniteField, gens, rng: random.Random):
    n = len(gens[0])
    A = [[0] * n for _ in range(n)]
    words = [identity(n)] + list(gens)
    for _ in range(3):
        a, b = rng.choice(words), rng.choice(words)
        words.append(mat_mul(K, a, b))
    for W in words:
        A = mat_add(K, A, mat_scale(K, rng.randrange(K.q), W))
    return A


def norton_test(mod: GroupAlgebraModule, seed: int = 0, tries: int = 64) -> SimplicityResult:
    """Decide simplicity with Norton's irreducibility criterion.

    Find a singular algebra element a.  Every nonzero v in ker a must generate
    the module, and some nonzero w in ker a^T must generate the dual module.
    A failure in either step exhibits a proper submodule.
    """
    K = mod.K
    n = mod.dim
    gens = mod.gens()
    if n == 1:
        return SimplicityResult(True)
    gens_t = [transpose(A) for A in gens]
    rng = random.Random(seed)
    for _ in range(tries):
        B = _random_element(K, gens, rng)
        for lam in range(K.q):
            A = mat_add(K, B, mat_scale(K, K.neg(lam), identity(n)))
            ker = nullspace(K, A)
            if not ker:
                continue
            vecs = _all_vectors(K, ker)
            if vecs is None:
                continue
            for v in vecs:
                S = spin(K, gens, [v])
                if len(S) < n:
                    return SimplicityResult(False, S)
            w = nullspace(K, transpose(A))[0]
            T = spin(K, gens_t, [w])
            if len(T) < n:
                # the annihilator of a proper dual submodule is a proper submodule
                return SimplicityResult(False, nullspace(K, T))
            return SimplicityResult(True)
    raise RuntimeError("no usable singular element found")


def is_simple(mod: GroupAlgebraModule, seed: int = 0) -> bool:
    return norton_test(mod, seed).simple


def _complete_basis(K: FiniteField, sub, n: int):
    """Columns: sub basis followed by standard vectors completing it."""
    basis = [list(v) for v in sub]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        if rank(K, basis + [e]) > len(basis):
            basis.append(e)
    return basis


def split_module(mod: GroupAlgebraModule, sub) -> tuple[GroupAlgebraModule, GroupAlgebraModule]:
    """Submodule and quotient for an invariant subspace ``sub``."""
    K = mod.K
    n = mod.dim
    k = len(sub)
    basis = _complete_basis(K, sub, n)
    P = transpose(basis)  # columns = new basis
    Pi = mat_inverse(K, P)
    sub_act, quo_act = {}, {}
    for g, A in mod.action.items():
        B = mat_mul(K, mat_mul(K, Pi, A), P)
        if any(B[i][j] for i in range(k, n) for j in range(k)):
            raise ValueError("subspace is not invariant")
        sub_act[g] = [row[:k] for row in B[:k]]
        quo_act[g] = [row[k:] for row in B[k:]]
    return (GroupAlgebraModule(mod.group, K, sub_act, mod.name + "_sub"),
            GroupAlgebraModule(mod.group, K, quo_act, mod.name + "_quo"))


def composition_factors(mod: GroupAlgebraModule, seed: int = 0) -> list[GroupAlgebraModule]:
    res = norton_test(mod, seed)
    if res.simple:
        return [mod]
    sub, quo = split_module(mod, res.submodule)
    return composition_factors(sub, seed) + composition_factors(quo, seed)


def hom_dimension(a: GroupAlgebraModule, b: GroupAlgebraModule) -> int:
    """dim Hom_G(a, b), from the intertwiner equations X A_g = B_g X on generators."""
    K = a.K
    n, m = a.dim, b.dim
    rows = []
    for g in a.group.generators():
        A, B = a.action[g], b.action[g]
        # (X A - B X)_{ij} = sum_k X_{ik} A_{kj} - sum_k B_{ik} X_{kj}; X is m x n
        for i in range(m):
            for j in range(n):
                row = [0] * (m * n)
                for k in range(n):
                    if A[k][j]:
                        row[i * n + k] = K.add(row[i * n + k], A[k][j])
                for k in range(m):
                    if B[i][k]:
                        row[k * n + j] = K.sub(row[k * n + j], B[i][k])
                rows.append(row)
    return m * n - rank(K, rows)


def isomorphic_simple(a: GroupAlgebraModule, b: GroupAlgebraModule) -> bool:
    return a.dim == b.dim and hom_dimension(a, b) > 0


def factor_multiset(factors: Sequence[GroupAlgebraModule], reference: dict) -> dict:
    """Count composition factors by the key of an isomorphic module in ``reference``."""
    counts: dict = {}
    for fac in factors:
        key = next((k for k, ref in reference.items() if isomorphic_simple(fac, ref)), None)
        counts[key] = counts.get(key, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# central idempotents


@dataclass
class AlgebraElement:
    """A sparse element of K[G]: group element -> coefficient."""

    K: FiniteField
    coeffs: dict

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = self.K.add(out.get(g, 0), c)
        return AlgebraElement(self.K, {g: c for g, c in out.items() if c})

    def mul(self, other: "AlgebraElement", group_mul) -> "AlgebraElement":
        out: dict = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                k = group_mul(g, h)
                out[k] = self.K.add(out.get(k, 0), self.K.mul(a, b))
        return AlgebraElement(self.K, {g: c for g, c in out.items() if c})

    def act(self, mod: GroupAlgebraModule):
        n = mod.dim
        M = [[0] * n for _ in range(n)]
        for g, c in self.coeffs.items():
            M = mat_add(mod.K, M, mat_scale(mod.K, c, mod.action[g]))
        return M


def _cyclic_generator(Z: MatrixGroupTable) -> tuple[Mat2, list[Mat2]]:
    for g in Z.elements:
        powers = [Z.identity()]
        x = g
        while x != Z.identity():
            powers.append(x)
            x = Z.mul(x, g)
        if len(powers) == len(Z):
            return g, powers
    raise ValueError("subgroup is not cyclic")


def smallest_coefficient_field(p: int, n: int) -> FiniteField:
    m = 1
    while (p ** m - 1) % n:
        m += 1
    return field(p, m)


def central_idempotents(Z: MatrixGroupTable, K: FiniteField):
    """e_chi = |Z|^{-1} sum_z chi(z) z^{-1} for the characters chi_k(g^i) = zeta^{ik} of a cyclic Z."""
    n = len(Z)
    if n % K.p == 0:
        raise CentralCharacterError("|Z| must be prime to p")
    zeta = K.root_of_unity(n)
    g, powers = _cyclic_generator(Z)
    inv_n = K.inv(K.from_int(n))
    out = []
    for k in range(n):
        coeffs = {}
        for i, z in enumerate(powers):
            chi = K.pow(zeta, i * k)
            coeffs[Z.inv(z)] = K.mul(inv_n, chi)
        out.append((k, AlgebraElement(K, coeffs)))
    return g, zeta, out


def eigenspace_dim(mod: GroupAlgebraModule, z: Mat2, value: int) -> int:
    K = mod.K
    A = mat_add(K, mod.action[z], mat_scale(K, K.neg(value), identity(mod.dim)))
    return len(nullspace(K, A))


def idempotent_report(mod: GroupAlgebraModule, Z: MatrixGroupTable) -> list[CheckReport]:
    K = mod.K
    g, zeta, idem = central_idempotents(Z, K)
    mul = Z.mul
    out = []
    total = AlgebraElement(K, {})
    for _, e in idem:
        total = total + e
    out.append(CheckReport("idempotents sum to 1", total.coeffs == {Z.identity(): 1}))
    ok = True
    for i, (_, e) in enumerate(idem):
        for j, (_, f_) in enumerate(idem):
            prod = e.mul(f_, mul)
            want = e.coeffs if i == j else {}
            ok &= prod.coeffs == want
    out.append(CheckReport("idempotents orthogonal", ok))
    dims = []
    eig_ok = True
    for k, e in idem:
        r = rank(K, e.act(mod))
        dims.append(r)
        eig_ok &= r == eigenspace_dim(mod, g, K.pow(zeta, k))
    out.append(CheckReport("eigenspace decomposition", sum(dims) == mod.dim and eig_ok,
                           f"dims {dims} sum {sum(dims)} = {mod.dim}"))
    return out


def random_gu_module(p: int, seed: int, max_dim: int = 9) -> GroupAlgebraModule:
    """A random direct sum of twisted Sym^n tensor det^b modules of GU11(F_p), in a random basis."""
    G = build_groups(p, 1)
    rng = random.Random(seed)
    parts = []
    dim = 0
    while dim < 2 or (dim < max_dim and rng.random() < 0.6):
        n = rng.randrange(0, 3)
        if dim + n + 1 > max_dim:
            break
        parts.append(sym_det_module(G.GU11, G.F, n, rng.randrange(G.F.q - 1), rng.randrange(2)))
        dim += n + 1
    mod = direct_sum(parts)
    K = G.F
    while True:
        P = [[rng.randrange(K.q) for _ in range(mod.dim)] for _ in range(mod.dim)]
        if mat_det(K, P):
            return mod.conjugate(P)


# ---------------------------------------------------------------------------
# crossed products


def crossed_product_check(p: int, f: int, samples: int = 4, seed: int = 0) -> list[CheckReport]:
    """K[GU11] is a crossed product of K[U11] by k_{K_2}^x / U1 = k_K^x.

    Freeness with basis the lifted coset representatives is checked on group
    elements (the group elements form a basis of both algebras).
    """
    G = build_groups(p, f)
    F = G.F
    rng = random.Random(seed)
    U = set(G.U11.elements)
    kappas = [x for x in F.subfield(f) if x]
    by_kappa: dict[int, list] = {}
    for g in G.GU11.elements:
        by_kappa.setdefault(G.multiplier(g), []).append(g)
    rank_expected = len(G.GU11) // len(G.U11)
    reports = [CheckReport("crossed product rank", rank_expected == p ** f - 1 == len(kappas),
                           f"rank {rank_expected}")]
    ok_free = ok_normal = ok_cocycle = True
    for trial in range(samples):
        if trial == 0:
            reps = {}
            for k in kappas:
                z = next(z for z in F.units() if G.norm(z) == k)
                reps[k] = m_scalar(z)
        else:
            reps = {k: rng.choice(by_kappa[k]) for k in kappas}
        left = [frozenset(m_mul(F, y, u) for u in U) for y in reps.values()]
        right = [frozenset(m_mul(F, u, y) for u in U) for y in reps.values()]
        for cosets in (left, right):
            union = set().union(*cosets)
            ok_free &= union == set(G.GU11.elements) and sum(len(c) for c in cosets) == len(G.GU11)
        ok_normal &= all(l_ == r_ for l_, r_ in zip(left, right))
        for k1, y1 in reps.items():
            for k2, y2 in reps.items():
                y12 = reps[F.mul(k1, k2)]
                lhs = frozenset(m_mul(F, m_mul(F, y1, y2), u) for u in U)
                rhs = frozenset(m_mul(F, y12, u) for u in U)
                ok_cocycle &= lhs == rhs
    reports.append(CheckReport("free left and right over K[U11]", ok_free))
    reports.append(CheckReport("y~ Lambda = Lambda y~", ok_normal))
    reports.append(CheckReport("y~1 y~2 Lambda = (y1 y2)~ Lambda", ok_cocycle))
    return reports


# ---------------------------------------------------------------------------
# transfer U11 <-> GL2(k_K)


def _extend_character(G: GroupBundle, K: FiniteField, chi: dict) -> dict:
    """Some character psi of k_{K_2}^x with psi|_{U1} = chi (K = k_{K_2} for f = 1)."""
    F = G.F
    gen = F.generator
    n = F.q - 1
    for k in range(K.q - 1):
        psi = {F.pow(gen, i): K.pow(K.exp[k], i) for i in range(n)}
        if all(psi[z] == chi[z] for z in chi):
            return psi
    raise CentralCharacterError("central character does not extend")


def central_character(mod: GroupAlgebraModule, scalars: Iterable[Mat2]) -> dict:
    K = mod.K
    out = {}
    for s in scalars:
        A = mod.action[s]
        c = A[0][0]
        if A != mat_scale(K, c, identity(mod.dim)):
            raise CentralCharacterError("module has no central character")
        out[s[0]] = c
    return out


def transfer_to_gl2(mod: GroupAlgebraModule, psi: dict | None = None):
    """V over U11 -> V_G over GL2(k_K) via GU11 = U11 x^{U1} k_{K_2}^x."""
    G = build_groups(mod.K.p, 1)
    K = mod.K
    chi = central_character(mod, G.U1.elements)
    if psi is None:
        psi = _extend_character(G, K, chi)
    elif any(psi[z] != c for z, c in chi.items()):
        raise CentralCharacterError("psi does not extend the central character")
    act = {}
    for h in G.GL2.elements:
        u, z = decompose_unitary(G, h)
        act[h] = mat_scale(K, psi[z], mod.action[u])
    return GroupAlgebraModule(G.GL2, K, act, mod.name + "_G"), psi


def transfer_to_u11(mod: GroupAlgebraModule, psi: dict):
    """W over GL2(k_K) -> W_U over U11 via GU11 = GL2 x^{k_K^x} k_{K_2}^x."""
    G = build_groups(mod.K.p, 1)
    K = mod.K
    xi = central_character(mod, G.ZG.elements)
    if any(psi[z] != c for z, c in xi.items()):
        raise CentralCharacterError("psi does not extend the central character")
    act = {}
    for u in G.U11.elements:
        h, z = decompose_linear(G, u)
        act[u] = mat_scale(K, psi[z], mod.action[h])
    return GroupAlgebraModule(G.U11, K, act, mod.name + "_U")


def nonsplit_example(p: int = 3) -> GroupAlgebraModule:
    """Sym^p of the standard representation of U11(F_p): a non-split extension."""
    G = build_groups(p, 1)
    return sym_det_module(G.U11, G.F, p, 0)


def transfer_report(p: int = 3) -> list[CheckReport]:
    G = build_groups(p, 1)
    weights = serre_weight_modules(p)
    reports = []
    simple_ok = True
    round_ok = True
    hom_ok = True
    for key, V in weights.items():
        VG, psi = transfer_to_gl2(V)
        hom_ok &= VG.check_homomorphism()
        simple_ok &= is_simple(V) and is_simple(VG)
        back = transfer_to_u11(VG, psi)
        round_ok &= all(back.action[u] == V.action[u] for u in G.U11.elements)
    reports.append(CheckReport("transfer is a GL2 representation", hom_ok))
    reports.append(CheckReport("simplicity preserved on all Serre weights", simple_ok,
                               f"{len(weights)} weights"))
    reports.append(CheckReport("round trip U11 -> GL2 -> U11 is the identity", round_ok))
    distinct = all(not isomorphic_simple(a, b) for i, a in enumerate(weights.values())
                   for b in list(weights.values())[i + 1:])
    reports.append(CheckReport("Serre weights pairwise non-isomorphic", distinct))
    V = nonsplit_example(p)
    VG, psi = transfer_to_gl2(V)
    fac_u = factor_multiset(composition_factors(V), weights)
    gl_refs = {k: transfer_to_gl2(W)[0] for k, W in weights.items()
               if central_character(W, G.U1.elements) == central_character(V, G.U1.elements)}
    fac_g = factor_multiset(composition_factors(VG), gl_refs)
    nonsplit = hom_dimension(V, V) == 1 and not is_simple(V)
    reports.append(CheckReport("JH multiplicities preserved on a non-split extension",
                               nonsplit and fac_u == fac_g and None not in fac_u,
                               f"factors {sorted(fac_u.items())}"))
    return reports


def groups_report(p: int, f: int, full: bool = True, idempotent_modules: int = 10) -> list[CheckReport]:
    G = build_groups(p, f)
    reports = [CheckReport("orders", True, ", ".join(f"|{k}| = {v}" for k, v in G.orders().items()))]
    reports += pushout_check(p, f)
    if not full:
        return reports
    for seed in range(idempotent_modules):
        mod = random_gu_module(p, seed)
        for r in idempotent_report(mod, G.Z):
            r.name = f"module {seed}: {r.name}"
            reports.append(r)
    reports += crossed_product_check(p, f)
    reports += transfer_report(p)
    return reports
