"""Shapes of types relative to a tame parameter and the component matching labels."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .extgraph import graph_distance
from .lattice import LatticeError
from .types import (
    T01,
    T10,
    WT10,
    AdmissibleWord,
    DoubleTypePresentation,
    admissible_symmetric,
    equivalent,
    is_conjugate_self_dual,
    jh_of_word,
    star,
    type_for_shape,
)
from .weights import PreconditionError, SerreWeightClass, TameParam, predicted_weights_by_omega

ZERO = "0"
C11 = "c11"
C22 = "c22"

# action of the starred letter on a graph coordinate x
_AFFINE = {
    T10: lambda x: x + 1,
    WT10: lambda x: 1 - x,
    T01: lambda x: x - 1,
}


@dataclass(frozen=True)
class ComponentLabel:
    """Labels indexed by graph coordinate j; ``by_slot`` re-indexes them by 2f-1-j."""

    values: tuple[str, ...]

    @property
    def f(self) -> int:
        return len(self.values)

    def by_slot(self) -> dict[int, str]:
        f = self.f
        return {2 * f - 1 - j: v for j, v in enumerate(self.values)}

    def to_json(self) -> dict:
        return {
            "labels": list(self.values),
            "labels_by_slot": {str(k): v for k, v in sorted(self.by_slot().items())},
        }


def _letter_at(starred_entry) -> str:
    translation, swap = starred_entry
    if swap:
        return WT10
    return T10 if tuple(translation) == (1, 0) else T01


def profile_sets(w: AdmissibleWord) -> list[tuple[int, ...]]:
    """For each graph coordinate j: the x in {0,1} sent into {0,1} by the starred letter at j."""
    if not w.is_symmetric():
        raise PreconditionError("intersection profiles are defined for symmetric words")
    starred = star(w)
    out = []
    for j in range(w.f):
        g = _AFFINE[_letter_at(starred[j])]
        out.append(tuple(x for x in (0, 1) if g(x) in (0, 1)))
    return out


def intersection_profile(w: AdmissibleWord) -> list[int]:
    return [len(s) for s in profile_sets(w)]


def shape_candidates(param: TameParam, t: DoubleTypePresentation) -> list[AdmissibleWord]:
    return [w for w in admissible_symmetric(param.f) if equivalent(t, type_for_shape(param, w))]


def shape_of(param: TameParam, t: DoubleTypePresentation, check_self_dual: bool = True):
    """The symmetric word w~' with t equivalent to tau'_{w~'}, or None."""
    param.require_depth(1)
    if check_self_dual and not is_conjugate_self_dual(t):
        raise PreconditionError("shape_of needs a conjugate self-dual type")
    found = shape_candidates(param, t)
    if len(found) > 1:
        raise LatticeError(f"type matches several shapes: {[str(w) for w in found]}")
    return found[0] if found else None


def intersection(param: TameParam, w: AdmissibleWord) -> dict[tuple[int, ...], SerreWeightClass]:
    """Predicted weights lying in JH(tau'_{w~'}), keyed by their Sigma-coordinate."""
    jh = set(jh_of_word(param, w))
    return {om: sigma for om, sigma in predicted_weights_by_omega(param).items() if sigma in jh}


def _omega_of(param: TameParam, sigma: SerreWeightClass) -> tuple[int, ...]:
    for om, tau in predicted_weights_by_omega(param).items():
        if tau == sigma:
            return om
    raise PreconditionError(f"{sigma} is not a predicted weight")


def labels_for(w: AdmissibleWord, omega: tuple[int, ...]) -> ComponentLabel:
    values = []
    for j, allowed in enumerate(profile_sets(w)):
        if len(allowed) == 1:
            values.append(ZERO)
        else:
            values.append(C22 if omega[j] == 0 else C11)
    return ComponentLabel(tuple(values))


def _resolve_shape(param: TameParam, t) -> AdmissibleWord:
    if isinstance(t, AdmissibleWord):
        return t
    w = shape_of(param, t)
    if w is None:
        raise PreconditionError("the type has no shape relative to this parameter")
    return w


def component_match(param: TameParam, t, sigma: SerreWeightClass) -> ComponentLabel:
    """Label of the component of the deformation space matched with sigma.

    ``t`` may be a type presentation or directly its shape.
    """
    w = _resolve_shape(param, t)
    inter = intersection(param, w)
    om = _omega_of(param, sigma)
    if om not in inter:
        raise PreconditionError(f"{sigma} does not lie in W? meet JH of the type")
    return labels_for(w, om)


def unique_diff_embedding(param: TameParam, t, sigma1: SerreWeightClass, sigma2: SerreWeightClass) -> int:
    """The graph coordinate j at which the labels of two weights at graph distance 1 differ."""
    w = _resolve_shape(param, t)
    o1, o2 = _omega_of(param, sigma1), _omega_of(param, sigma2)
    if graph_distance(o1, o2) != 1:
        raise PreconditionError("the two weights are not at graph distance 1")
    l1 = component_match(param, w, sigma1).values
    l2 = component_match(param, w, sigma2).values
    diff = [j for j in range(param.f) if l1[j] != l2[j]]
    if len(diff) != 1:
        raise LatticeError(f"labels differ in {len(diff)} slots")
    return diff[0]


def label_slot(f: int, j: int) -> int:
    return 2 * f - 1 - j


def expected_intersection(w: AdmissibleWord) -> set[tuple[int, ...]]:
    return set(product(*profile_sets(w)))
