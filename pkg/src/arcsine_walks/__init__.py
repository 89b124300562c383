"""Exact and simulated statistics of convex hulls of random walks and bridges.

The number of k-tuples of partial sums whose convex hull avoids the origin has
a distribution-free expectation.  This package evaluates the closed forms
exactly, checks them against exhaustive Weyl-chamber face enumeration, and
simulates them with reproducible Monte Carlo.
"""

from .combinatorics import (
    arcsine_pmf,
    b_row,
    expected_containing_count,
    expected_m_bridge,
    expected_m_walk,
    limit_moment_bridge,
    limit_moment_walk,
    nonabsorption_bridge,
    nonabsorption_walk,
    stirling_row,
    uniform_bridge_pmf,
)
from .geometry import (
    GeneralPositionError,
    SubspaceSpec,
    UnsupportedSizeError,
    cone_meets_subspace_trivially,
    general_position_check,
    origin_in_hull,
    origin_in_hull_fast,
)
from .montecarlo import (
    empirical_distribution_of_m,
    monte_carlo_expected_m,
    monte_carlo_nonabsorption,
)
from .walks import count_nonabsorbed_tuples, sample_bridge, sample_walk
from .weyl import (
    average_trivial_faces_A,
    average_trivial_faces_B,
    bridge_face_equivalence,
    chamber_vertex_count,
    corollary_vertex_distribution,
    random_gp_subspace,
    walk_face_equivalence,
)

__all__ = [
    "arcsine_pmf",
    "b_row",
    "expected_containing_count",
    "expected_m_bridge",
    "expected_m_walk",
    "limit_moment_bridge",
    "limit_moment_walk",
    "nonabsorption_bridge",
    "nonabsorption_walk",
    "stirling_row",
    "uniform_bridge_pmf",
    "GeneralPositionError",
    "SubspaceSpec",
    "UnsupportedSizeError",
    "cone_meets_subspace_trivially",
    "general_position_check",
    "origin_in_hull",
    "origin_in_hull_fast",
    "empirical_distribution_of_m",
    "monte_carlo_expected_m",
    "monte_carlo_nonabsorption",
    "count_nonabsorbed_tuples",
    "sample_bridge",
    "sample_walk",
    "average_trivial_faces_A",
    "average_trivial_faces_B",
    "bridge_face_equivalence",
    "chamber_vertex_count",
    "corollary_vertex_distribution",
    "random_gp_subspace",
    "walk_face_equivalence",
]

__version__ = "0.1.0"
