"""Small numeric helpers shared by the test modules.

Everything here is an independent re-derivation used as an oracle:
orthonormal tangent frames built by Gram-Schmidt in the ambient metric,
central finite differences for directional derivatives, and raw membership
defects computed straight from the model equations.
"""

import math

import numpy as np

from geoprox import minkowski_inner


def hyp_tangent_basis(geom, x):
    """Orthonormal basis of the tangent space at x on H^n, built by
    Gram-Schmidt on projected ambient unit vectors."""
    basis = []
    for i in range(geom.n + 1):
        e = np.zeros(geom.n + 1)
        e[i] = 1.0
        v = geom.project_tangent(x, e).vec
        for b in basis:
            v = v - minkowski_inner(b, v) * b
        sq = minkowski_inner(v, v)
        if sq > 1e-12:
            basis.append(v / math.sqrt(sq))
        if len(basis) == geom.n:
            break
    return basis


def hyp_membership_defect(coords):
    """|<x,x>_M + 1| computed directly from the coordinates."""
    return abs(minkowski_inner(coords, coords) + 1.0)


def fd_directional(geom, value, p, direction, eps=1e-5):
    """Central finite difference of `value` along the unit-speed geodesic
    through p with the given tangent direction."""
    plus = value(geom.exp(p, geom.scale_tangent(direction, eps)))
    minus = value(geom.exp(p, geom.scale_tangent(direction, -eps)))
    return (plus - minus) / (2.0 * eps)


def unit_tangent(geom, p, rng):
    """Random tangent at p normalized to metric norm 1."""
    t = geom.random_tangent(p, rng, 1.0)
    nrm = geom.norm(p, t)
    return geom.scale_tangent(t, 1.0 / nrm)
