"""Numeric iteration kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module with the same interface is loaded.  Set ``POLYREV_PURE_PYTHON=1`` to
force the fallback.
"""

import os

if os.environ.get("POLYREV_PURE_PYTHON"):
    from ._pykernels import iterate_orbit, iterate_points

    BACKEND = "python"
else:
    try:
        from ._ckernels import iterate_orbit, iterate_points

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import iterate_orbit, iterate_points

        BACKEND = "python"

__all__ = ["BACKEND", "iterate_orbit", "iterate_points"]
