"""Heisenberg parabolic towers of split simple root systems and coadjoint orbits
of their nilradicals, in exact rational arithmetic."""

from .chevalley import (
    ChevalleyBasis,
    LayerDecomposition,
    NilpotentLieAlgebra,
    Report,
    bracket,
    build_nilradical,
    verify_heisenberg,
    verify_jacobi,
    verify_tower_action,
)
from .kirillov import (
    KirillovError,
    LinearFunctional,
    classify_rank,
    coadjoint_action,
    orbit_dimension,
    rank_threshold,
    rankable_functional,
    skew_form,
    stabilizer_dimension,
)
from .rootsys import (
    DynkinType,
    RootSystem,
    RootSystemError,
    build_root_system,
    classify_type,
    highest_root,
    irreducible_components,
    pairing,
)
from .tower import (
    HeisenbergTower,
    TowerError,
    TowerStep,
    build_tower,
    layer_dims,
    next_step,
    orthogonal_subsystem,
    r_value,
    sigma_set,
)

__version__ = "0.1.0"

__all__ = [
    "ChevalleyBasis",
    "DynkinType",
    "HeisenbergTower",
    "KirillovError",
    "LayerDecomposition",
    "LinearFunctional",
    "NilpotentLieAlgebra",
    "Report",
    "RootSystem",
    "RootSystemError",
    "TowerError",
    "TowerStep",
    "bracket",
    "build_nilradical",
    "build_root_system",
    "build_tower",
    "classify_rank",
    "classify_type",
    "coadjoint_action",
    "highest_root",
    "irreducible_components",
    "layer_dims",
    "next_step",
    "orbit_dimension",
    "orthogonal_subsystem",
    "pairing",
    "r_value",
    "rank_threshold",
    "rankable_functional",
    "sigma_set",
    "skew_form",
    "stabilizer_dimension",
    "verify_heisenberg",
    "verify_jacobi",
    "verify_tower_action",
]
