"""Extremal-set computations in finite discretizations of ``L_p``.

Chebyshev radii relative to the convex hull, Williams-Wells gaps,
self-extremality against the Jung constant, and near-equilateral simplex
extraction, with brute-force references for small instances.
"""

__version__ = "0.1.0"

from .chebyshev import (
    ChebyshevSolution,
    CoreResult,
    SimplexWeights,
    SolverConfig,
    ambient_radius,
    equidistant_core,
    relative_radius,
)
from .errors import ConvergenceWarning, InputError, OracleLimitError
from .extremal import (
    Classification,
    Extremality,
    HeavyIndexReport,
    Infeasible,
    SimplexWitness,
    extract_simplex,
    extremality_ratio,
    gulevich_margin,
    heavy_indices,
    jung_constant,
    neighbor_indices,
    separated_subset,
)
from .gallery import indicator_family, rademacher_family, random_family
from .oracle import exhaustive_simplex, grid_radius, pairwise_table
from .space import PointSet, WeightedSpace, combine, diameter, distance, norm
from .williams_wells import alpha_exponent, ww_gap, ww_sides
