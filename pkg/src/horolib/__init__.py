"""Horofunctions and detour distances on model metric spaces."""

from . import detour, embeddings, geo, horo, sampling, serialize, spaces
from .detour import (
    ExceedsCutoff,
    Finite,
    PartKey,
    WitnessedBusemann,
    boundary_witness,
    detour_cost,
    detour_distance,
    part_dimension,
    part_key,
    product_busemann,
    same_part,
    transport_under_embedding,
    variation_norm,
)
from .errors import *  # noqa: F401,F403
from .geo import induced_ray, is_almost_geodesic, ray_point_at_radius
from .horo import (
    BallBoundary,
    DiscBoundary,
    InternalPeak,
    ProductComposite,
    Rebased,
    SampledHorofunction,
    SupSign,
    decompose_product_horofunction,
    horofunction_limit_estimate,
)
from .spaces import ball, disc, distance, polydisc, product, real_line, star_graph, sup_rn

__version__ = "0.1.0"
