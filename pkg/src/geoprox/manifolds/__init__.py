from .base import (CurvatureBounds, Geometry, ManifoldPoint, TangentVector,
                   curvature_coefficients, geodesic)
from .euclidean import EuclideanGeometry
from .hyperboloid import (HyperbolicGeometry, hyp_dist, hyp_exp, hyp_log,
                          hyp_sample_gaussian, hyp_sample_intrinsic,
                          minkowski_inner)
from .spd import SpdGeometry, spd_dist, spd_exp, spd_inner, spd_log

__all__ = [
    "CurvatureBounds", "Geometry", "ManifoldPoint", "TangentVector",
    "curvature_coefficients", "geodesic",
    "EuclideanGeometry", "HyperbolicGeometry", "SpdGeometry",
    "minkowski_inner",
    "hyp_dist", "hyp_exp", "hyp_log", "hyp_sample_gaussian",
    "hyp_sample_intrinsic",
    "spd_dist", "spd_exp", "spd_inner", "spd_log",
]
