"""Pure NumPy fallback for the Sturm-sequence kernels.

The pivot recurrence is sequential in the matrix index, so the fallback
vectorizes across shift candidates instead: each multisection round probes
a batch of interior points at once and the bracket shrinks by the batch
size per round rather than by 2.  Results agree with the compiled kernel
to the requested tolerance because both stop on the same bracket width.
"""

from __future__ import annotations

import numpy as np

_SAFE_MIN = 2.2250738585072014e-308

# Probes per multisection round.  One round costs a single sweep over the
# matrix regardless of batch size, so a wide batch amortizes Python loop
# overhead; 63 probes shrink the bracket 64x per sweep.
_BATCH = 63


def _pivmin(off2: np.ndarray) -> float:
    top = float(off2.max()) if off2.size else 1.0
    return _SAFE_MIN * max(1.0, top)


def _counts(diag: np.ndarray, off2: np.ndarray, xs: np.ndarray,
            pivmin: float) -> np.ndarray:
    """Sturm counts for a batch of shifts, one recurrence sweep."""
    t = diag[0] - xs
    np.copyto(t, -pivmin, where=np.abs(t) < pivmin)
    cnt = (t < 0.0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        t = diag[i] - xs - off2[i - 1] / t
        np.copyto(t, -pivmin, where=np.abs(t) < pivmin)
        cnt += t < 0.0
    return cnt


def count_below(diag, off2, x: float) -> int:
    """Number of eigenvalues strictly below x."""
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off2 = np.ascontiguousarray(off2, dtype=np.float64)
    xs = np.array([float(x)])
    return int(_counts(diag, off2, xs, _pivmin(off2))[0])


def bisect_lowest(diag, off2, lo: float, hi: float, tol: float) -> float:
    """Smallest eigenvalue, multisected to absolute width tol.

    The caller guarantees count_below(lo) == 0 and count_below(hi) >= 1.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off2 = np.ascontiguousarray(off2, dtype=np.float64)
    pivmin = _pivmin(off2)
    lo = float(lo)
    hi = float(hi)
    while hi - lo > tol:
        xs = np.linspace(lo, hi, _BATCH + 2)[1:-1]
        if xs[0] <= lo or xs[-1] >= hi:
            break  # bracket at float resolution
        cnt = _counts(diag, off2, xs, pivmin)
        hits = np.nonzero(cnt >= 1)[0]
        if hits.size == 0:
            lo = float(xs[-1])
        else:
            j = int(hits[0])
            hi = float(xs[j])
            if j > 0:
                lo = float(xs[j - 1])
    return 0.5 * (lo + hi)
