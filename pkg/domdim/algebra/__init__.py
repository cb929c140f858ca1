"""Monomial bound quiver algebras, their modules and injective resolutions."""

from domdim.algebra.bound import (
    BoundQuiverAlgebra,
    EngineConfig,
    EnvelopeSummand,
    InjectiveEnvelope,
    projective_injectives,
)
from domdim.algebra.paths import PathBasis, is_zero_path
from domdim.algebra.representation import (
    ModuleMap,
    Representation,
    ResolutionError,
    SemisimpleProfile,
    are_isomorphic,
    cokernel,
    direct_sum,
    hom_space,
    is_uniserial,
    radical_layers,
    socle,
    top,
)
from domdim.algebra.resolution import (
    INFINITY,
    AlgebraDominantDimension,
    InjectiveResolution,
    ProjectiveReport,
    ResolutionTerm,
    Summand,
    dominant_dimension_algebra,
    dominant_dimension_module,
    dominant_dimension_of,
    format_value,
    minimal_injective_resolution,
)

__all__ = [
    "INFINITY",
    "AlgebraDominantDimension",
    "BoundQuiverAlgebra",
    "EngineConfig",
    "EnvelopeSummand",
    "InjectiveEnvelope",
    "InjectiveResolution",
    "ModuleMap",
    "PathBasis",
    "ProjectiveReport",
    "Representation",
    "ResolutionError",
    "ResolutionTerm",
    "SemisimpleProfile",
    "Summand",
    "are_isomorphic",
    "cokernel",
    "direct_sum",
    "dominant_dimension_algebra",
    "dominant_dimension_module",
    "dominant_dimension_of",
    "format_value",
    "hom_space",
    "is_uniserial",
    "is_zero_path",
    "minimal_injective_resolution",
    "projective_injectives",
    "radical_layers",
    "socle",
    "top",
]
