"""Backend selection for the radial kernels.

The compiled extension is preferred; set ``GRAVBEC_PURE_PYTHON=1`` to force
the NumPy fallback.
"""

import os

if os.environ.get("GRAVBEC_PURE_PYTHON"):
    from ._kernels_py import *          # noqa: F401,F403
    from ._kernels_py import BACKEND
else:
    try:
        from ._kernels_cy import *      # noqa: F401,F403
        from ._kernels_cy import BACKEND
    except ImportError:
        from ._kernels_py import *      # noqa: F401,F403
        from ._kernels_py import BACKEND

__all__ = ["BACKEND", "kinetic_apply", "gravity_potential", "energy_terms",
           "effective_potential", "flow_step"]
