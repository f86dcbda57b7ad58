# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: regularized incomplete beta and the brute-force
closure scan.  Mirrors `fallback.py`; keep both in sync."""

from libc.math cimport exp, fabs, lgamma, log, log1p

import numpy as np

from ..errors import NumericError, ValidationError

COMPILED = True

cdef double _EPS = 1e-15
cdef double _TINY = 1e-300
cdef int _CF_MAX_ITER = 300
cdef int _SERIES_MAX_ITER = 2000


cdef double _beta_cf(double a, double b, double x, bint* ok) nogil:
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, delta
    cdef int m, m2
    if fabs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if fabs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if fabs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < _EPS:
            ok[0] = True
            return h
    ok[0] = False
    return h


cdef double _beta_series(double a, double b, double x, bint* ok) nogil:
    cdef double term = 1.0
    cdef double total = 1.0
    cdef int n
    for n in range(_SERIES_MAX_ITER):
        term *= x * (a + b + n) / (a + 1.0 + n)
        total += term
        if fabs(term) < _EPS * fabs(total):
            ok[0] = True
            return total
    ok[0] = False
    return total


cdef double _reg_inc_beta_raw(double x, double a, double b, bint* ok) nogil:
    cdef double front, h
    ok[0] = True
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = exp(a * log(x) + b * log1p(-x)
                - (lgamma(a) + lgamma(b) - lgamma(a + b)))
    if x < (a + 1.0) / (a + b + 2.0):
        h = _beta_cf(a, b, x, ok)
        if not ok[0]:
            h = _beta_series(a, b, x, ok)
        return front * h / a
    h = _beta_cf(b, a, 1.0 - x, ok)
    if not ok[0]:
        h = _beta_series(b, a, 1.0 - x, ok)
    return 1.0 - front * h / b


cdef inline double _clamp01(double v) nogil:
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


def reg_inc_beta(double x, double a, double b):
    """Regularized incomplete beta function I_x(a, b)."""
    cdef bint ok = True
    cdef double v
    if not (a > 0.0 and b > 0.0):
        raise ValidationError(f"beta parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"beta argument must lie in [0,1], got x={x}")
    v = _reg_inc_beta_raw(x, a, b, &ok)
    if not ok:
        raise NumericError(f"incomplete beta did not converge for x={x}, a={a}, b={b}")
    return _clamp01(v)


def reg_inc_beta_many(xs, double a, double b):
    """Elementwise I_x(a, b) for an array of x and fixed (a, b)."""
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t k
    cdef bint ok = True
    cdef bint all_ok = True
    if not (a > 0.0 and b > 0.0):
        raise ValidationError(f"beta parameters must be positive, got a={a}, b={b}")
    for k in range(n):
        if not 0.0 <= xv[k] <= 1.0:
            raise ValidationError("beta arguments must lie in [0,1]")
    with nogil:
        for k in range(n):
            ov[k] = _clamp01(_reg_inc_beta_raw(xv[k], a, b, &ok))
            if not ok:
                all_ok = False
    if not all_ok:
        raise NumericError("incomplete beta did not converge")
    return out.reshape(np.shape(xs))


def closure_scan(p, thresholds):
    """Brute-force scan of every intersection hypothesis over disjoint index
    pairs (J1, J2), marking which per-edge rejections survive.

    See the fallback docstring for the contract; results must be identical.
    """
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[::1] thr = np.ascontiguousarray(thresholds, dtype=np.float64)
    cdef Py_ssize_t m = pv.shape[0]
    if thr.shape[0] != m:
        raise ValidationError("need one threshold per intersection size 1..M")
    if m > 16:
        raise ValidationError(f"closure scan limited to 16 tests, got {m}")
    cdef long long total = 1
    cdef Py_ssize_t i
    for i in range(m):
        total *= 3
    survive_h = np.zeros(m, dtype=np.uint8)
    survive_k = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] sh = survive_h
    cdef unsigned char[::1] sk = survive_k
    cdef long long idx, rest
    cdef int digit, size
    cdef double lowest_h, highest_k, t
    cdef int[16] digits
    with nogil:
        for idx in range(1, total):
            rest = idx
            size = 0
            lowest_h = 2.0
            highest_k = -1.0
            for i in range(m):
                digit = <int> (rest % 3)
                rest //= 3
                digits[i] = digit
                if digit == 1:
                    size += 1
                    if pv[i] < lowest_h:
                        lowest_h = pv[i]
                elif digit == 2:
                    size += 1
                    if pv[i] > highest_k:
                        highest_k = pv[i]
            t = thr[size - 1]
            if lowest_h <= t or highest_k >= 1.0 - t:
                continue  # hypothesis rejected; blocks nothing
            for i in range(m):
                if digits[i] == 1:
                    sh[i] = 1
                elif digits[i] == 2:
                    sk[i] = 1
    reject_h = np.logical_not(survive_h).astype(np.uint8)
    reject_k = np.logical_not(survive_k).astype(np.uint8)
    return reject_h, reject_k
