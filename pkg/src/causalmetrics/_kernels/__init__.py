"""Hot numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred when present; set CAUSAL_METRICS_PURE=1
to force the fallback.  Both backends are bit-identical (see tests).
"""

import os

if os.environ.get("CAUSAL_METRICS_PURE"):
    from . import pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import pure as _impl

        BACKEND = "pure"

minplus_closure = _impl.minplus_closure
triangle_violations = _impl.triangle_violations
minkowski_gain = _impl.minkowski_gain
minkowski_polyline_gain = _impl.minkowski_polyline_gain


def backend() -> str:
    """Name of the kernel backend selected at import ("compiled" or "pure")."""
    return BACKEND
