"""Kernel backend selection.

The compiled extension is preferred when present; set FINSHAPE_PURE=1 to
force the pure-Python fallback (used by the backend benchmark and tests).
"""

import os

if os.environ.get("FINSHAPE_PURE"):
    from finshape import _pykernels as _impl

    BACKEND = "pure"
else:
    try:
        from finshape import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        from finshape import _pykernels as _impl

        BACKEND = "pure"

closure_rows = _impl.closure_rows
continuous_maps_to_discrete = _impl.continuous_maps_to_discrete
r3_oracle_rows = _impl.r3_oracle_rows
count_matching_factorizations = _impl.count_matching_factorizations
