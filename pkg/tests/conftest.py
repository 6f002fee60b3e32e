"""Shared fixtures: one-time kernel warmup so timed tests measure math,
not jit compilation."""

import numpy as np
import pytest

from geoprox import kernels
from geoprox.kernels import accelerated, reference


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    x = np.array([0.3, -0.2, np.sqrt(1.0 + 0.09 + 0.04)])
    apex = np.array([0.0, 0.0, 1.0])
    pts = np.stack([x, apex])
    tangents = np.zeros((2, 3))
    for mod in (accelerated, reference):
        mod.dist_many(pts, x)
        mod.log_many(x, pts)
        mod.exp_many(x, tangents)
        mod.cppa_cycle(pts, x, 0.5)
        mod.l1_prox_fp(x, 0.1, 1e-7, 20)
    kernels.dist_many(pts, x)
    return True
