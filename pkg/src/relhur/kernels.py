"""Backend selection for the tridiagonal Sturm kernels.

The compiled extension is preferred when it imported cleanly; setting
REL_HUR_PURE=1 forces the NumPy fallback.  Both backends export the same
two functions and agree to the requested bisection tolerance, so callers
never need to know which one is active.  BACKEND records the choice for
diagnostics and the benchmark script.
"""

from __future__ import annotations

import os

if os.environ.get("REL_HUR_PURE") == "1":
    from . import _tridiag_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _tridiag as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _tridiag_py as _impl

        BACKEND = "python"

count_below = _impl.count_below
bisect_lowest = _impl.bisect_lowest

__all__ = ["BACKEND", "count_below", "bisect_lowest"]
