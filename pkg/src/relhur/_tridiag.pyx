# cython: boundscheck=False, wraparound=False, cdivision=True
"""Sturm-sequence kernels for symmetric tridiagonal eigenvalue bisection.

The LDL^T pivot recurrence t_i = d_i - x - e_{i-1}^2 / t_{i-1} is strictly
sequential, so it lives here as tight C loops released from the GIL.  The
sign count of the pivots equals the number of eigenvalues below x.
"""

from libc.math cimport fabs

cdef double _SAFE_MIN = 2.2250738585072014e-308


cdef double _pivmin(const double[::1] off2) noexcept nogil:
    cdef double m = 1.0
    cdef Py_ssize_t i
    for i in range(off2.shape[0]):
        if off2[i] > m:
            m = off2[i]
    return _SAFE_MIN * m


cdef int _count_below(const double[::1] diag, const double[::1] off2,
                      double x, double pivmin) noexcept nogil:
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef int cnt = 0
    cdef double t = diag[0] - x
    if fabs(t) < pivmin:
        t = -pivmin
    if t < 0.0:
        cnt += 1
    for i in range(1, n):
        t = diag[i] - x - off2[i - 1] / t
        if fabs(t) < pivmin:
            t = -pivmin
        if t < 0.0:
            cnt += 1
    return cnt


def count_below(const double[::1] diag, const double[::1] off2, double x):
    """Number of eigenvalues strictly below x."""
    cdef double pivmin = _pivmin(off2)
    cdef int cnt
    with nogil:
        cnt = _count_below(diag, off2, x, pivmin)
    return cnt


def bisect_lowest(const double[::1] diag, const double[::1] off2,
                  double lo, double hi, double tol):
    """Smallest eigenvalue, bisected to absolute width tol.

    The caller guarantees count_below(lo) == 0 and count_below(hi) >= 1.
    """
    cdef double pivmin = _pivmin(off2)
    cdef double mid
    with nogil:
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _count_below(diag, off2, mid, pivmin) >= 1:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)
