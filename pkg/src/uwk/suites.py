"""Verification suites shared by the command line and the test-suite."""

from __future__ import annotations

import random
from itertools import product

from .extgraph import bc_graph, graph_distance, region_points, t_map, t_map_double
from .fingroups import CheckReport, build_groups, groups_report
from .lattice import (
    DoubleWeylElement,
    UnitaryCharacter,
    WeylElement,
    base_change,
    depth,
    lattice_index,
)
from .lifts import alpha_duality_holds, alpha_exponents, ht_weights, fl_range_check
from .polysym import (
    EXTRA_FILES,
    ROW_FILES,
    MvPolynomial,
    jacobian_det_check,
    polarization_identity_check,
    star_units,
    symmetry_rewrite,
    table1_ideal,
    table2_ideal,
)
from .shapes import component_match, expected_intersection, intersection, unique_diff_embedding
from .types import (
    DoubleTypePresentation,
    admissible_symmetric,
    all_words,
    equivalent,
    incidence,
    is_conjugate_self_dual,
    jh_of_type,
    jh_of_word,
    theta,
    type_for_shape,
    types_containing_weight,
    x_sigma,
)
from .weights import TameParam, bc_weight, canonicalize, predicted_weights

SUITES = ("graph", "types", "ideals", "lifts", "groups")


def random_mu(p: int, f: int, deep: int, rng: random.Random) -> UnitaryCharacter:
    """A random character whose pairings make it ``deep``-deep at p."""
    lo, hi = deep, p - 2 - deep
    if lo > hi:
        raise ValueError(f"no {deep}-deep characters at p={p}")
    out = []
    for _ in range(f):
        b = rng.randint(-p, p)
        out.append((b + rng.randint(lo, hi), b))
    return UnitaryCharacter(tuple(out))


def conjugacy_reps(f: int) -> list[WeylElement]:
    """s up to Frobenius-conjugacy is determined by the parity of its bits."""
    return [WeylElement.identity(f), WeylElement(tuple([True] + [False] * (f - 1)))]


# ---------------------------------------------------------------------------
# graph


def check_weight_cardinality(p: int, f: int, samples: int = 20, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    bad = 0
    for s in conjugacy_reps(f):
        for _ in range(samples):
            param = TameParam(s, random_mu(p, f, 1, rng), p, f)
            ws = predicted_weights(param)
            bad += len(ws) != 2 ** f
    return CheckReport(f"|W?| = 2^f at p={p} f={f}", bad == 0, f"{bad} failures")


def check_bc_compatibility(p: int, f: int, samples: int = 50, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    checked = bad = 0
    for _ in range(samples):
        mu = random_mu(p, f, 1, rng)
        bmu = base_change(mu)
        for om in region_points(mu, p):
            checked += 1
            bad += bc_weight(t_map(mu, om, p)) != t_map_double(bmu, bc_graph(om), p)
    return CheckReport(f"BC(t_mu(w)) = t_BC(mu)(BC(w)) at p={p} f={f}", bad == 0,
                       f"{checked} points, {bad} failures")


def check_lattice_index(p: int, f: int) -> CheckReport:
    idx = lattice_index(p, f)
    return CheckReport(f"[X0 : (p-pi)X0] = p^f + 1 at p={p} f={f}", idx == p ** f + 1, f"index {idx}")


def check_component_matching(p: int, f: int, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    bad = []
    for s in conjugacy_reps(f):
        param = TameParam(s, random_mu(p, f, 2, rng), p, f)
        for w in admissible_symmetric(f):
            inter = intersection(param, w)
            if set(inter) != expected_intersection(w):
                bad.append(f"{w}: intersection")
                continue
            labels = {om: component_match(param, w, sigma).values for om, sigma in inter.items()}
            if len(set(labels.values())) != len(labels):
                bad.append(f"{w}: labels not injective")
            for o1, o2 in product(inter, repeat=2):
                if o1 < o2 and graph_distance(o1, o2) == 1:
                    j = unique_diff_embedding(param, w, inter[o1], inter[o2])
                    if o1[j] == o2[j]:
                        bad.append(f"{w}: slot {j}")
    return CheckReport(f"component matching at p={p} f={f}", not bad, "; ".join(bad[:3]))


def graph_suite(p: int, f: int) -> list[CheckReport]:
    return [check_weight_cardinality(p, f), check_bc_compatibility(p, f, samples=10),
            check_lattice_index(p, f), check_component_matching(p, f)]


# ---------------------------------------------------------------------------
# types


def check_symiff(p: int, f: int, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    param = TameParam(WeylElement.identity(f), random_mu(p, f, 2, rng), p, f)
    words = all_words(f)
    bad = [str(w) for w in words
           if is_conjugate_self_dual(type_for_shape(param, w), warn=False) != w.is_symmetric()]
    return CheckReport(f"self-dual iff symmetric over {len(words)} words at p={p} f={f}", not bad,
                       ", ".join(bad[:3]))


def check_theta(param: TameParam) -> CheckReport:
    th = theta(param)
    f = param.f
    words = admissible_symmetric(f)
    bad = 0
    for sigma, word in th.items():
        for w in words:
            bad += (sigma in set(jh_of_word(param, w))) != incidence(w.letters[:f], word)
        bad += len(x_sigma(param, sigma)) != 2 ** f
    return CheckReport(f"theta incidence at p={param.p} f={f} mu={param.mu}", bad == 0, f"{bad} failures")


def check_types_containing(p: int, f: int, samples: int = 5, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        sigma = canonicalize(random_mu(p, f, 2, rng), p)
        ts = types_containing_weight(sigma, p, f)
        jhs = [frozenset(jh_of_type(t)) for t in ts]
        bad += len(ts) != 2 ** f or len(set(jhs)) != len(jhs) or any(sigma not in j for j in jhs)
    return CheckReport(f"types containing a weight at p={p} f={f}", bad == 0, f"{bad} failures")


def diagonal_types(p: int, f: int) -> list[DoubleTypePresentation]:
    """tau'((v,v), BC(lam)) for lam - rho 1-deep, over one box of representatives."""
    out = []
    for v in WeylElement.all(f):
        for pairs in product(*[[(b + n, b) for n in range(2, p - 2) for b in range(p + 1)]] * f):
            lam = UnitaryCharacter(tuple(pairs))
            out.append(DoubleTypePresentation(DoubleWeylElement.diagonal(v), base_change(lam), p))
    return out


def check_jh_determines_type(p: int, f: int, pairs: int | None = None, seed: int = 0) -> CheckReport:
    """Equal JH sets force equivalent presentations (all pairs, or a random sample)."""
    ts = diagonal_types(p, f)
    jh = {}

    def jh_of(t):
        if t not in jh:
            jh[t] = frozenset(jh_of_type(t))
        return jh[t]

    if pairs is None:
        candidates = [(a, b) for i, a in enumerate(ts) for b in ts[i + 1:]]
    else:
        rng = random.Random(seed)
        candidates = []
        for _ in range(pairs):
            a = rng.choice(ts)
            # bias towards pairs sharing a weight, the only ones where the implication has content
            sigma = sorted(jh_of(a), key=lambda x: x.sort_key())[0]
            b = rng.choice(types_containing_weight(sigma, p, f, check=False)) if depth(sigma.rep, p) >= 2 \
                else rng.choice(ts)
            candidates.append((a, b))
    equal = bad = 0
    for a, b in candidates:
        if jh_of(a) == jh_of(b):
            equal += 1
            bad += not equivalent(a, b, warn=False)
    return CheckReport(f"equal JH sets imply equivalence at p={p} f={f}", bad == 0,
                       f"{len(candidates)} pairs, {equal} with equal JH sets, {bad} failures")


def types_suite(p: int, f: int, seed: int = 0) -> list[CheckReport]:
    rng = random.Random(seed)
    out = [check_symiff(p, f, seed)]
    deep = min(4, (p - 2) // 2)
    for s in conjugacy_reps(f):
        out.append(check_theta(TameParam(s, random_mu(p, f, deep, rng), p, f)))
    if p >= 7:
        out.append(check_types_containing(p, f, seed=seed))
    return out


# ---------------------------------------------------------------------------
# ideals


def ideals_suite() -> list[CheckReport]:
    out = []
    for flip in (False, True):
        res = jacobian_det_check(flip=flip)
        out.append(CheckReport(f"Jacobian determinant, flip={flip}", res.matches_up_to_sign,
                               f"sign {res.sign}"))
    out.append(CheckReport("polarization identity, both signs", polarization_identity_check()))
    for flip in (False, True):
        ideals = {f"table1 {k}": table1_ideal(k, flip) for k in ROW_FILES}
        ideals.update({f"table2 {k}": table2_ideal(k, flip) for k in EXTRA_FILES})
        for name, ideal in ideals.items():
            zero = all(symmetry_rewrite(ideal, g).is_zero() for g in ideal)
            units = star_units(ideal)
            ok_units = all(symmetry_rewrite(ideal, units ** k - MvPolynomial.const(1)).is_zero()
                           for k in (1, 7)) if units.variables() else True
            out.append(CheckReport(f"rewriting {name}, flip={flip}", zero and ok_units))
    return out


# ---------------------------------------------------------------------------
# lifts


def lifts_suite(p: int, f: int, samples: int = 2000, seed: int = 0) -> list[CheckReport]:
    rng = random.Random(seed)
    if f == 1:
        mus = [UnitaryCharacter(((b + n, b),)) for n in range(p) for b in range(-p, p + 1)]
    else:
        mus = [UnitaryCharacter(tuple((b + n, b) for n, b in
                                      ((rng.randrange(p), rng.randint(-p, p)) for _ in range(f))))
               for _ in range(samples)]
    bad_dual = sum(not alpha_duality_holds(v, alpha_exponents(v, mu, p)[0])
                   for mu in mus for v in WeylElement.all(f))
    zero_deep = [mu for mu in mus if depth(mu, p) >= 0]
    bad_fl = sum(not fl_range_check(ht_weights(mu, p), p) for mu in zero_deep)
    return [CheckReport(f"alpha duality at p={p} f={f}", bad_dual == 0, f"{len(mus)} characters"),
            CheckReport(f"HT weights in the FL range at p={p} f={f}", bad_fl == 0,
                        f"{len(zero_deep)} characters")]


# ---------------------------------------------------------------------------


def run_suite(name: str, p: int, f: int) -> list[CheckReport]:
    if name == "graph":
        return graph_suite(p, f)
    if name == "types":
        return types_suite(p, f)
    if name == "ideals":
        return ideals_suite()
    if name == "lifts":
        return lifts_suite(p, f)
    if name == "groups":
        build_groups(p, f)
        return groups_report(p, f, full=(p, f) == (3, 1))
    raise ValueError(f"unknown suite {name!r}")
