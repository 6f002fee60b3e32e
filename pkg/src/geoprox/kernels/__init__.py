"""Hot-loop kernels with selectable backend.

``geoprox.kernels.dist_many`` etc. resolve to the backend chosen by
GEOPROX_BACKEND (see geoprox.backends). Both implementations stay importable
as submodules for cross-checking and benchmarking.
"""

from ..backends import ACTIVE_BACKEND
from . import reference

if ACTIVE_BACKEND == "numba":
    from . import accelerated as _impl
else:
    _impl = reference

dist_many = _impl.dist_many
log_many = _impl.log_many
exp_many = _impl.exp_many
cppa_cycle = _impl.cppa_cycle
l1_prox_fp = _impl.l1_prox_fp

__all__ = ["dist_many", "log_many", "exp_many", "cppa_cycle", "l1_prox_fp",
           "reference"]
