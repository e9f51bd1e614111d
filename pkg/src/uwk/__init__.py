"""Serre weights, tame types and symmetry ideals for unramified U(1,1)."""

from .extgraph import RegionError, omega_element, t_map, t_map_double
from .lattice import (
    DoubleCharacter,
    DoubleWeylElement,
    LatticeError,
    Params,
    UnitaryCharacter,
    WeylElement,
    base_change,
    depth,
    frobenius,
    in_sublattice,
    lattice_index,
)
from .lifts import LiftData, alpha_exponents, fl_range_check, ht_weights, lift_data
from .shapes import ComponentLabel, component_match, intersection_profile, shape_of
from .types import (
    AdmissibleWord,
    DoubleTypePresentation,
    GenericityWarning,
    equivalent,
    is_conjugate_self_dual,
    theta,
    type_for_shape,
    types_containing_weight,
)
from .weights import (
    DepthError,
    PreconditionError,
    SerreWeightClass,
    TameParam,
    canonicalize,
    jh_factors,
    predicted_weights,
)

__all__ = [
    "AdmissibleWord", "ComponentLabel", "DepthError", "DoubleCharacter", "DoubleTypePresentation",
    "DoubleWeylElement", "GenericityWarning", "LatticeError", "LiftData", "Params", "PreconditionError",
    "RegionError", "SerreWeightClass", "TameParam", "UnitaryCharacter", "WeylElement", "alpha_exponents",
    "base_change", "canonicalize", "component_match", "depth", "equivalent", "fl_range_check", "frobenius",
    "ht_weights", "in_sublattice", "intersection_profile", "is_conjugate_self_dual", "jh_factors",
    "lattice_index", "lift_data", "omega_element", "predicted_weights", "shape_of", "t_map",
    "t_map_double", "theta", "type_for_shape", "types_containing_weight",
]
