"""Constructions on Veronese surfaces, quadrics, webs of quadrics and point
configurations."""

from .apolarity import (
    CatalecticantMatrix,
    WebOfQuadrics,
    apolarity_pair,
    cubic_quadrics,
    hessian_matrix,
    is_catalecticant,
    jacobian_ideal,
    orthic_web,
    secant_parameters,
    secant_sextic_ideal,
    symmetroid_and_nodes,
)
from .gale import (
    GaleResult,
    PointConfiguration,
    gale_transform,
    orthogonality_scalars,
    projective_equivalence,
    projectively_equivalent,
    quartics_singular_at,
)
from .quadrics import (
    QuadricForm,
    fixed_point_transform,
    quadric_rank_vertex,
    quadrics_through,
    random_isometry,
)
from .transforms import ProjectiveTransform, hodge_star, plucker_quadric, plucker_ring, wedge2
from .veronese import (
    VeroneseSurface,
    congruence_ideal,
    congruence_transform,
    nu2,
    p5_ring,
    position_facts,
    pullback_to_plane,
    standard_veronese_ideal,
    veronese_ideal,
    veronese_parametrization,
    veronese_quadric,
)

__all__ = [name for name in dir() if not name.startswith("_")]
